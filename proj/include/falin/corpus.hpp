#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "falin/errors.hpp"
#include "falin/linearize.hpp"
#include "falin/poly_map.hpp"
#include "falin/torus.hpp"

namespace falin {

/// Parameters of a generated action sigma = alpha o tau_M o alpha^-1.
struct CorpusSpec {
  std::size_t rank = 2;
  std::uint64_t seed = 0;
  int n_elementary = 1;
  int max_poly_degree = 2;
  int weight_bound = 1;
  bool force_effective = true;
  /// Use these weights instead of drawing them.
  std::optional<IntMatrix> weights;
  /// Bound on deg(alpha) * deg(alpha^-1), hence on the degree of sigma.
  int degree_cap = 12;
};

/// z_target -> z_target + p with p free of z_target, and its inverse.
struct Elementary {
  ScalarMap map;
  ScalarMap inverse;
  std::size_t target = 0; ///< zero-based
};

struct GeneratedAction {
  TorusAction sigma;
  ScalarMap alpha;
  ScalarMap alpha_inverse;
  IntMatrix weights;
};

inline Elementary make_elementary(std::size_t rank, std::size_t target, const ScalarPoly& p) {
  if (target >= rank)
    throw DimensionMismatch("elementary target out of range");
  for (const auto& [w, c] : p.terms())
    for (std::size_t i = 0; i < w.size(); ++i)
      if (static_cast<std::size_t>(w[i]) == target + 1)
        throw DomainError("elementary polynomial must not involve its target generator");
  auto forward = ScalarMap::identity(rank).images();
  auto backward = forward;
  forward[target] = forward[target] + p;
  backward[target] = backward[target] - p;
  Elementary e{ScalarMap(std::move(forward)), ScalarMap(std::move(backward)), target};
  const auto id = ScalarMap::identity(rank);
  if (!(compose(e.map, e.inverse) == id) || !(compose(e.inverse, e.map) == id))
    throw InvariantViolation("elementary automorphism does not invert");
  return e;
}

/// Random elementary automorphism. For rank 1 the only option is a
/// translation; otherwise p has one or two terms of degree <= max_poly_degree
/// with nonzero coefficients in [-3, 3] and no constant term.
inline Elementary gen_elementary(std::size_t rank, std::mt19937_64& rng, int max_poly_degree,
                                 std::optional<std::size_t> target = std::nullopt) {
  const std::size_t tgt =
      target ? *target : static_cast<std::size_t>(detail::draw(rng, 0, static_cast<long>(rank) - 1));
  auto coefficient = [&] {
    long c = detail::draw(rng, 1, 3);
    return detail::draw(rng, 0, 1) ? c : -c;
  };
  ScalarPoly p(rank);
  if (rank == 1) {
    p.add_term(Word{}, coefficient());
    return make_elementary(rank, tgt, p);
  }
  const long terms = detail::draw(rng, 1, 2);
  for (long k = 0; k < terms; ++k) {
    const long lo = (k == 0 && max_poly_degree >= 2) ? 2 : 1;
    const long degree = detail::draw(rng, lo, std::max<long>(lo, max_poly_degree));
    Word w;
    for (long i = 0; i < degree; ++i) {
      long letter = detail::draw(rng, 1, static_cast<long>(rank) - 1);
      if (static_cast<std::size_t>(letter) >= tgt + 1)
        ++letter;
      w.push_back(static_cast<int>(letter));
    }
    p.add_term(w, coefficient());
  }
  return make_elementary(rank, tgt, p);
}

/// sigma = alpha o tau_M o alpha^-1, so that sigma o alpha = alpha o tau.
inline TorusAction conjugate_diagonal(const ScalarMap& alpha, const ScalarMap& alpha_inverse,
                                      const IntMatrix& weights) {
  const auto tau = build_tau(weights);
  return TorusAction(compose(compose(alpha, tau.map()), alpha_inverse));
}

namespace detail {

inline IntMatrix draw_weights(const CorpusSpec& spec, std::mt19937_64& rng) {
  const std::size_t n = spec.rank;
  IntMatrix m(n, n, 0);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        m(i, j) = static_cast<int>(draw(rng, -spec.weight_bound, spec.weight_bound));
    if (!spec.force_effective || is_effective(m))
      return m;
  }
  throw InvariantViolation("could not draw a nonsingular power matrix");
}

/// D * U * Q with D diagonal over {+-1, +-2, +-1/2}, U unit upper triangular
/// with entries in [-1, 1] and Q a permutation.
inline RationalMatrix draw_linear(std::size_t n, std::mt19937_64& rng) {
  static const Rational scales[] = {Rational(1), Rational(-1), Rational(2), Rational(-2),
                                    Rational(1, 2), Rational(-1, 2)};
  RationalMatrix d(n, n, Rational(0)), u = identity_matrix(n), q(n, n, Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    d(i, i) = scales[draw(rng, 0, 5)];
    for (std::size_t j = i + 1; j < n; ++j)
      u(i, j) = static_cast<int>(draw(rng, -1, 1));
  }
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i)
    perm[i] = i;
  for (std::size_t i = n; i > 1; --i)
    std::swap(perm[i - 1], perm[static_cast<std::size_t>(draw(rng, 0, static_cast<long>(i) - 1))]);
  for (std::size_t i = 0; i < n; ++i)
    q(i, perm[i]) = 1;
  return d * u * q;
}

} // namespace detail

/// Deterministic action with known linearization. alpha = L o e_1 o ... o e_k
/// with elementary factors targeting successive generators. A factor that
/// would push deg(alpha) * deg(alpha^-1) past the cap is replaced by a
/// linear one.
inline GeneratedAction gen_action(const CorpusSpec& spec) {
  if (spec.rank < 1 || spec.max_poly_degree < 1 || spec.weight_bound < 1 || spec.n_elementary < 0)
    throw DomainError("corpus bounds must be positive");
  const std::size_t n = spec.rank;
  std::mt19937_64 rng(spec.seed);

  IntMatrix weights = spec.weights ? *spec.weights : detail::draw_weights(spec, rng);
  if (weights.rows() != n || weights.cols() != n)
    throw DimensionMismatch("weights must be rank x rank");

  const RationalMatrix lin = detail::draw_linear(n, rng);
  ScalarMap chain = ScalarMap::identity(n);
  ScalarMap chain_inv = chain;
  std::size_t target = static_cast<std::size_t>(detail::draw(rng, 0, static_cast<long>(n) - 1));
  for (int k = 0; k < spec.n_elementary; ++k) {
    Elementary e = gen_elementary(n, rng, spec.max_poly_degree, target);
    ScalarMap next = compose(chain, e.map);
    ScalarMap next_inv = compose(e.inverse, chain_inv);
    if (next.degree() * next_inv.degree() > spec.degree_cap) {
      e = gen_elementary(n, rng, 1, target);
      next = compose(chain, e.map);
      next_inv = compose(e.inverse, chain_inv);
    }
    chain = std::move(next);
    chain_inv = std::move(next_inv);
    target = (target + 1) % n;
  }

  GeneratedAction out;
  out.weights = weights;
  out.alpha = compose(linear_map<Rational>(lin), chain);
  out.alpha_inverse = compose(chain_inv, linear_map<Rational>(inverse(lin)));
  const auto id = ScalarMap::identity(n);
  if (!(compose(out.alpha, out.alpha_inverse) == id))
    throw InvariantViolation("generated conjugator does not invert");
  out.sigma = conjugate_diagonal(out.alpha, out.alpha_inverse, weights);
  if (out.sigma.degree() > spec.degree_cap)
    throw DegreeBlowupExceeded(out.sigma.degree(), spec.degree_cap);
  return out;
}

} // namespace falin
