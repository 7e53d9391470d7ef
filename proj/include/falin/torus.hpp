#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "falin/errors.hpp"
#include "falin/free_poly.hpp"
#include "falin/matrix.hpp"
#include "falin/poly_map.hpp"

namespace falin {

/// Action of the split torus T_n on F_n: images of the generators with
/// Laurent-polynomial dependence on t_1..t_n.
class TorusAction {
public:
  TorusAction() = default;

  explicit TorusAction(ActionMap map) : map_(std::move(map)) {
    if (map_.ring().nvars != map_.rank())
      throw DimensionMismatch("torus dimension " + std::to_string(map_.ring().nvars) +
                              " differs from rank " + std::to_string(map_.rank()));
    degree_ = map_.degree();
  }

  std::size_t rank() const noexcept { return map_.rank(); }
  const ActionMap& map() const noexcept { return map_; }
  /// Maximal word length N over all images.
  int degree() const noexcept { return degree_; }
  LaurentRing ring() const { return map_.ring(); }

  friend bool operator==(const TorusAction&, const TorusAction&) = default;

private:
  ActionMap map_;
  int degree_ = -1;
};

/// Diagonal linear action z_i -> t^{m_i} z_i, m_i the i-th row of weights.
struct DiagonalAction {
  IntMatrix weights;
};

/// Applies fn to every coefficient, producing a map over target_ring.
template <class Fn>
ActionMap map_coefficients(const ActionMap& f, LaurentRing target_ring, Fn&& fn) {
  std::vector<ActionPoly> images;
  for (const auto& img : f.images()) {
    ActionPoly p(img.rank(), target_ring);
    for (const auto& [w, c] : img.terms())
      p.add_term(w, fn(c));
    images.push_back(std::move(p));
  }
  return ActionMap(std::move(images));
}

struct AxiomWitness {
  enum class Axiom { identity, compatibility };
  Axiom axiom;
  std::size_t image; ///< zero-based generator index
  Word word;
  LaurentPoly lhs; ///< sigma(s)(sigma(t)(z)) resp. sigma(1)(z)
  LaurentPoly rhs; ///< sigma(st)(z) resp. z
};

struct AxiomVerdict {
  std::optional<AxiomWitness> witness;
  bool passed() const noexcept { return !witness.has_value(); }
  explicit operator bool() const noexcept { return passed(); }
};

namespace detail {

/// Lowest-degree difference between the maps, ties broken by image and then
/// by graded-lex word order.
inline std::optional<AxiomWitness> first_difference(const ActionMap& lhs, const ActionMap& rhs,
                                                    AxiomWitness::Axiom axiom) {
  std::optional<AxiomWitness> best;
  for (std::size_t i = 0; i < lhs.rank(); ++i) {
    const auto& a = lhs.image(i);
    const auto& b = rhs.image(i);
    if (a == b)
      continue;
    std::set<Word> words;
    for (const auto& [w, c] : a.terms())
      words.insert(w);
    for (const auto& [w, c] : b.terms())
      words.insert(w);
    for (const auto& w : words) {
      if (best && w.size() >= best->word.size())
        break;
      auto ca = a.coefficient(w);
      auto cb = b.coefficient(w);
      if (!(ca == cb)) {
        best = AxiomWitness{axiom, i, w, std::move(ca), std::move(cb)};
        break;
      }
    }
  }
  return best;
}

inline ActionMap truncated(const ActionMap& f, std::size_t max_length) {
  std::vector<ActionPoly> images;
  for (const auto& img : f.images())
    images.push_back(img.truncated(max_length));
  return ActionMap(std::move(images));
}

/// g o f keeping only words of length <= max_length.
inline ActionMap compose_truncated(const ActionMap& g, const ActionMap& f, std::size_t max_length) {
  std::vector<ActionPoly> images;
  for (const auto& fi : f.images())
    images.push_back(f_substitute(fi, g.images(), max_length));
  return ActionMap(std::move(images));
}

} // namespace detail

/// Specialization at a point of the torus (all coordinates nonzero).
inline ScalarMap specialize(const TorusAction& sigma, std::span<const Rational> point) {
  if (point.size() != sigma.rank())
    throw DimensionMismatch("torus point has wrong dimension");
  std::vector<ScalarPoly> images;
  for (const auto& img : sigma.map().images()) {
    ScalarPoly p(img.rank());
    for (const auto& [w, c] : img.terms())
      p.add_term(w, l_eval(c, point));
    images.push_back(std::move(p));
  }
  return ScalarMap(std::move(images));
}

inline ScalarMap specialize(const TorusAction& sigma, const std::vector<Rational>& point) {
  return specialize(sigma, std::span<const Rational>(point));
}

/// Symbolic check of the action axioms by direct expansion:
/// sigma(s) o sigma(t) = sigma(st) over 2n torus variables (s occupying
/// indices n..2n-1), then sigma(1) = id. The composite has degree up to N^2,
/// so it is first compared truncated at lengths 1, 2, 4, ..., N; a failure
/// shows up there at its lowest degree. The full comparison runs last.
inline AxiomVerdict check_axioms_direct(const TorusAction& sigma) {
  const std::size_t n = sigma.rank();
  const LaurentRing doubled{2 * n};
  std::vector<LaurentPoly> to_t, to_s, to_st;
  for (std::size_t k = 0; k < n; ++k) {
    to_t.push_back(LaurentPoly::variable(2 * n, k));
    to_s.push_back(LaurentPoly::variable(2 * n, n + k));
    to_st.push_back(to_t.back() * to_s.back());
  }
  auto rename = [&](const std::vector<LaurentPoly>& images) {
    return map_coefficients(sigma.map(), doubled, [&](const LaurentPoly& c) {
      return l_subst_monomial(c, images, 2 * n);
    });
  };
  const ActionMap sigma_t = rename(to_t);
  const ActionMap sigma_s = rename(to_s);
  const ActionMap sigma_st = rename(to_st);
  const auto top = static_cast<std::size_t>(std::max(sigma.degree(), 0));
  for (std::size_t d = 1;; d *= 2) {
    const std::size_t len = std::min(d, top);
    if (auto w = detail::first_difference(detail::compose_truncated(sigma_s, sigma_t, len),
                                          detail::truncated(sigma_st, len),
                                          AxiomWitness::Axiom::compatibility))
      return {std::move(w)};
    if (len == top)
      break;
  }

  const std::vector<Rational> ones(n, Rational(1));
  const auto at_one = promote(specialize(sigma, ones), sigma.ring());
  if (auto w = detail::first_difference(at_one, ActionMap::identity(n, sigma.ring()),
                                        AxiomWitness::Axiom::identity))
    return {std::move(w)};

  if (auto w = detail::first_difference(compose(sigma_s, sigma_t), sigma_st,
                                        AxiomWitness::Axiom::compatibility))
    return {std::move(w)};
  return {};
}

namespace detail {

/// Euler operator t_j d/dt_j applied to every coefficient.
inline ActionPoly euler(const ActionPoly& f, std::size_t j) {
  ActionPoly r(f.rank(), f.ring());
  for (const auto& [w, c] : f.terms()) {
    LaurentPoly d(c.nvars());
    for (const auto& [e, a] : c.terms())
      if (e[j] != 0)
        d.add_term(e, a * e[j]);
    r.add_term(w, d);
  }
  return r;
}

/// Applies the derivation sending z_k to gens[k] (scalar images).
inline ActionPoly apply_derivation(const ActionPoly& f, const std::vector<ScalarPoly>& gens) {
  ActionPoly r(f.rank(), f.ring());
  for (const auto& [w, c] : f.terms())
    for (std::size_t pos = 0; pos < w.size(); ++pos)
      for (const auto& [u, d] : gens[static_cast<std::size_t>(w[pos]) - 1].terms())
        r.add_term(w.replaced(pos, u), l_scale(c, d));
  return r;
}

} // namespace detail

namespace detail {

/// Exact axiom test that avoids the degree-N^2 composite. With D_j the
/// derivation z_k -> (t_j d/dt_j sigma(t)(z_k))(1), sigma is an action iff
/// sigma(1) = id and D_j(sigma(t)(z_i)) = t_j d/dt_j sigma(t)(z_i) for all
/// i, j: differentiating the compatibility axiom at s = 1 gives the
/// equations, and conversely sigma(st) and sigma(t) o sigma(s) then solve the
/// same linear equation in t with equal value at t = 1, and a Laurent
/// solution vanishing at 1 is zero because its components are eigenvectors
/// of D_j for distinct eigenvalues. Quadratic in the number of terms.
inline bool satisfies_axioms_infinitesimally(const TorusAction& sigma) {
  const std::size_t n = sigma.rank();
  const std::vector<Rational> ones(n, Rational(1));
  if (!(promote(specialize(sigma, ones), sigma.ring()) == ActionMap::identity(n, sigma.ring())))
    return false;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<ActionPoly> rhs;
    std::vector<ScalarPoly> gens;
    for (const auto& img : sigma.map().images()) {
      rhs.push_back(euler(img, j));
      ScalarPoly g(n);
      for (const auto& [w, c] : rhs.back().terms())
        g.add_term(w, l_eval(c, ones));
      gens.push_back(std::move(g));
    }
    for (std::size_t i = 0; i < n; ++i)
      if (!(apply_derivation(sigma.map().image(i), gens) == rhs[i]))
        return false;
  }
  return true;
}

/// Verdict for an action already known to fail: the witness from the
/// direct expansion.
inline AxiomVerdict failing_verdict(const TorusAction& sigma) {
  auto verdict = check_axioms_direct(sigma);
  if (verdict)
    throw InvariantViolation("axiom check found no witness for a failing action");
  return verdict;
}

} // namespace detail

/// Checks the action axioms. An action conjugate to a diagonal one is an
/// action, so a linearization that ends verified is a certificate; otherwise
/// detail::satisfies_axioms_infinitesimally decides. Defined in
/// linearize.hpp.
inline AxiomVerdict check_axioms(const TorusAction& sigma);

inline Matrix<LaurentPoly> linear_matrix(const TorusAction& sigma) {
  return linear_part(sigma.map());
}

struct WeightDecomposition {
  RationalMatrix base_change; ///< P, columns are weight vectors
  IntMatrix weights;          ///< row i is the weight of column i of P
};

inline Matrix<LaurentPoly> diagonal_monomials(const IntMatrix& weights) {
  const std::size_t n = weights.rows();
  const std::size_t k = weights.cols();
  Matrix<LaurentPoly> d(n, n, LaurentPoly(k));
  for (std::size_t i = 0; i < n; ++i) {
    Exponent e(k);
    for (std::size_t j = 0; j < k; ++j)
      e[j] = weights(i, j);
    d(i, i) = LaurentPoly::monomial(std::move(e));
  }
  return d;
}

inline Matrix<LaurentPoly> to_laurent(const RationalMatrix& m, std::size_t nvars) {
  Matrix<LaurentPoly> r(m.rows(), m.cols(), LaurentPoly(nvars));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      r(i, j) = LaurentPoly::constant(nvars, m(i, j));
  return r;
}

/// Splits the representation A(t) into weight spaces. For each exponent mu
/// occurring in A, the space {v : A(t) v = t^mu v} is the kernel of the
/// coefficientwise system; the bases are concatenated into P. Basis vectors
/// are ordered by their last nonzero coordinate, so an already diagonal or
/// triangular A keeps its generator order.
inline WeightDecomposition weight_decomposition(const Matrix<LaurentPoly>& a) {
  const std::size_t n = a.rows();
  if (n == 0 || a.cols() != n)
    throw DimensionMismatch("weight decomposition needs a nonempty square matrix");
  const std::size_t nvars = a(0, 0).nvars();

  std::set<Exponent> support;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (a(i, j).nvars() != nvars)
        throw DimensionMismatch("matrix entries over different variable sets");
      for (const auto& [e, c] : a(i, j).terms())
        support.insert(e);
    }

  struct Vec {
    std::vector<Rational> v;
    Exponent weight;
    std::size_t last;
  };
  std::vector<Vec> found;
  for (const auto& mu : support) {
    RationalMatrix system(support.size() * n, n, Rational(0));
    std::size_t row = 0;
    for (const auto& nu : support) {
      for (std::size_t i = 0; i < n; ++i, ++row) {
        for (std::size_t j = 0; j < n; ++j)
          system(row, j) = a(i, j).coefficient(nu);
        if (nu == mu)
          system(row, i) -= 1;
      }
    }
    for (auto& v : kernel(system)) {
      std::size_t last = n;
      while (last > 0 && v[last - 1] == 0)
        --last;
      found.push_back({std::move(v), mu, last - 1});
    }
  }
  if (found.size() != n)
    throw NotDiagonalizable("weight spaces span dimension " + std::to_string(found.size()) +
                            " of " + std::to_string(n));
  std::stable_sort(found.begin(), found.end(), [](const Vec& x, const Vec& y) {
    if (x.last != y.last)
      return x.last < y.last;
    return x.weight > y.weight;
  });

  WeightDecomposition out{RationalMatrix(n, n, Rational(0)), IntMatrix(n, nvars, 0)};
  for (std::size_t col = 0; col < n; ++col) {
    for (std::size_t i = 0; i < n; ++i)
      out.base_change(i, col) = found[col].v[i];
    for (std::size_t k = 0; k < nvars; ++k)
      out.weights(col, k) = found[col].weight[k];
  }

  RationalMatrix p_inv;
  try {
    p_inv = inverse(out.base_change);
  } catch (const SingularMatrix&) {
    throw InvariantViolation("weight vectors are linearly dependent");
  }
  const LaurentPoly zero(nvars);
  const auto diag = multiply(multiply(to_laurent(p_inv, nvars), a, zero),
                             to_laurent(out.base_change, nvars), zero);
  if (!(diag == diagonal_monomials(out.weights)))
    throw InvariantViolation("base change does not diagonalize the linear part");
  return out;
}

inline IntMatrix power_matrix(const DiagonalAction& d) { return d.weights; }

/// Nonsingular power matrix, equivalently no one-parameter subtorus acts trivially.
inline bool is_effective(const IntMatrix& m) {
  if (m.rows() != m.cols())
    return false;
  return determinant(m) != 0;
}

struct FixedPointOptions {
  std::uint64_t seed = 0;
  int attempts = 16;
  int newton_steps = 60;
};

namespace detail {

inline LaurentPoly derivative(const LaurentPoly& p, std::size_t var) {
  LaurentPoly r(p.nvars());
  for (const auto& [e, c] : p.terms()) {
    if (e[var] == 0)
      continue;
    Exponent d = e;
    --d[var];
    r.add_term(d, c * e[var]);
  }
  return r;
}

inline Rational eval_all(const LaurentPoly& p, const std::vector<Rational>& x) {
  std::vector<std::optional<Rational>> values(x.begin(), x.end());
  return l_specialize(p, values).constant_term();
}

/// Deterministic uniform integer in [lo, hi]; modulo keeps the stream portable.
inline long draw(std::mt19937_64& rng, long lo, long hi) {
  return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

/// Polynomial with double coefficients, for the floating search stage.
struct FloatPoly {
  std::vector<std::pair<double, std::vector<int>>> terms;

  explicit FloatPoly(const LaurentPoly& p) {
    for (const auto& [e, c] : p.terms())
      terms.emplace_back(to_double(c), std::vector<int>(e.begin(), e.end()));
  }

  double operator()(const std::vector<double>& x) const { return eval(x, false); }
  /// Sum of the absolute values of the terms: the scale of rounding error.
  double magnitude(const std::vector<double>& x) const { return eval(x, true); }

  double eval(const std::vector<double>& x, bool absolute) const {
    double sum = 0;
    for (const auto& [c, e] : terms) {
      double m = c;
      for (std::size_t k = 0; k < e.size(); ++k)
        for (int p = 0; p < e[k]; ++p)
          m *= x[k];
      sum += absolute ? std::abs(m) : m;
    }
    return sum;
  }
};

/// Solves m d = r by partial pivoting; false when (numerically) singular.
inline bool float_solve(std::vector<std::vector<double>> m, std::vector<double> r,
                        std::vector<double>& d) {
  const std::size_t n = r.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t i = col + 1; i < n; ++i)
      if (std::abs(m[i][col]) > std::abs(m[piv][col]))
        piv = i;
    if (!(std::abs(m[piv][col]) > 1e-300))
      return false;
    std::swap(m[piv], m[col]);
    std::swap(r[piv], r[col]);
    for (std::size_t i = col + 1; i < n; ++i) {
      const double f = m[i][col] / m[col][col];
      for (std::size_t j = col; j < n; ++j)
        m[i][j] -= f * m[col][j];
      r[i] -= f * r[col];
    }
  }
  d.assign(n, 0);
  for (std::size_t i = n; i-- > 0;) {
    double v = r[i];
    for (std::size_t j = i + 1; j < n; ++j)
      v -= m[i][j] * d[j];
    d[i] = v / m[i][i];
  }
  return std::all_of(d.begin(), d.end(), [](double v) { return std::isfinite(v); });
}

} // namespace detail

namespace detail {

inline double max_norm(const std::vector<double>& v) {
  double m = 0;
  for (double a : v) {
    if (!std::isfinite(a))
      return HUGE_VAL;
    m = std::max(m, std::abs(a));
  }
  return m;
}

/// Commutative polynomial with exact coefficients, evaluated through power tables.
struct ExactPoly {
  std::vector<std::pair<Rational, std::vector<int>>> terms;
  std::vector<int> max_exp;

  explicit ExactPoly(const LaurentPoly& p) : max_exp(p.nvars(), 0) {
    for (const auto& [e, c] : p.terms()) {
      terms.emplace_back(c, std::vector<int>(e.begin(), e.end()));
      for (std::size_t k = 0; k < e.size(); ++k)
        max_exp[k] = std::max(max_exp[k], e[k]);
    }
  }
};

/// Nearest rational with denominator 2^bits.
inline Rational round_dyadic(const Rational& x, unsigned bits) {
  Integer scaled = floor(x * Rational(Integer(1) << bits) + Rational(1, 2));
  return make_rational(scaled, Integer(1) << bits);
}

/// The abelianized action at one torus point, exactly and in floating point.
struct SpecializedSystem {
  std::vector<LaurentPoly> g;
  std::vector<std::vector<LaurentPoly>> jac;
  std::vector<FloatPoly> fg;
  std::vector<std::vector<FloatPoly>> fjac;

  SpecializedSystem(const std::vector<LaurentPoly>& abel, const std::vector<Rational>& t) {
    const std::size_t n = abel.size();
    std::vector<std::optional<Rational>> point(t.begin(), t.end());
    point.resize(2 * n);
    jac.resize(n);
    fjac.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      g.push_back(l_specialize(abel[i], point));
      fg.emplace_back(g[i]);
      for (std::size_t j = 0; j < n; ++j) {
        jac[i].push_back(derivative(g[i], j));
        fjac[i].emplace_back(jac[i][j]);
      }
    }
  }

  std::size_t size() const { return g.size(); }

  std::vector<double> apply(const std::vector<double>& x) const {
    std::vector<double> y(size());
    for (std::size_t i = 0; i < size(); ++i)
      y[i] = fg[i](x);
    return y;
  }

  std::vector<double> residual(const std::vector<double>& x) const {
    auto r = apply(x);
    for (std::size_t i = 0; i < size(); ++i)
      r[i] -= x[i];
    return r;
  }

  /// Residual small against the size of the terms that produced it.
  bool near_root(const std::vector<double>& x) const {
    double scale = max_norm(x);
    for (const auto& p : fg)
      scale = std::max(scale, p.magnitude(x));
    return max_norm(residual(x)) <= 1e-8 * (1 + scale);
  }

  /// Damped Newton on g(x) - x; false if it diverges or gets stuck far
  /// from a root.
  bool newton(std::vector<double>& y, int steps) const {
    const std::size_t n = size();
    auto r = residual(y);
    double size_now = max_norm(r);
    for (int step = 0; step < steps && size_now > 0; ++step) {
      std::vector<std::vector<double>> m(n, std::vector<double>(n));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          m[i][j] = fjac[i][j](y) - (i == j ? 1 : 0);
      std::vector<double> d;
      if (!float_solve(m, r, d))
        break;
      std::vector<double> next(n);
      double next_size = HUGE_VAL;
      double lambda = 1;
      for (; lambda > 1e-6; lambda /= 2) {
        for (std::size_t i = 0; i < n; ++i)
          next[i] = y[i] - lambda * d[i];
        next_size = max_norm(residual(next));
        if (next_size < size_now)
          break;
      }
      if (!(next_size < size_now))
        break;
      y = next;
      r = residual(y);
      size_now = next_size;
      if (max_norm(d) * lambda < 1e-13 * (1 + max_norm(y)))
        break;
    }
    return std::isfinite(size_now) && near_root(y);
  }

  /// Exact x <- g(x) from the origin, iterates rounded to dyadic rationals.
  /// When g is conjugate to a contraction this reaches the fixed point from
  /// anywhere; exact arithmetic survives the large transients that floating
  /// evaluation loses to cancellation. accept is tried on the iterates
  /// once they settle.
  template <class Accept>
  std::optional<std::vector<Rational>> iterate(int steps, Accept&& accept) const {
    const std::size_t n = size();
    std::vector<ExactPoly> polys;
    for (const auto& p : g)
      polys.emplace_back(p);
    std::vector<Rational> x(n, Rational(0));
    const Rational tiny = make_rational(Integer(1), Integer(1) << 80);
    for (int step = 0; step < steps; ++step) {
      std::vector<std::vector<Rational>> powers(n);
      for (std::size_t k = 0; k < n; ++k) {
        int top = 0;
        for (const auto& p : polys)
          top = std::max(top, p.max_exp[k]);
        powers[k].push_back(Rational(1));
        for (int e = 1; e <= top; ++e)
          powers[k].push_back(powers[k].back() * x[k]);
      }
      std::vector<Rational> next(n);
      Rational moved = 0;
      bool huge = false;
      for (std::size_t i = 0; i < n; ++i) {
        Rational sum = 0;
        for (const auto& [c, e] : polys[i].terms) {
          Rational term = c;
          for (std::size_t k = 0; k < n; ++k)
            if (e[k])
              term *= powers[k][static_cast<std::size_t>(e[k])];
          sum += term;
        }
        next[i] = round_dyadic(sum, 256);
        moved = std::max(moved, Rational(abs(next[i] - x[i])));
        huge = huge || mpz_sizeinbase(next[i].get_num_mpz_t(), 2) > 4096;
      }
      x = std::move(next);
      if (huge)
        return std::nullopt;
      if (moved < tiny)
        return accept(x);
    }
    return std::nullopt;
  }
};

/// An integer w with mu . w < 0 for every nonzero t-exponent mu of the
/// coefficients (perceptron updates). The exponents are nonnegative
/// combinations of the weights and include each weight, so at t = 2^w the
/// action is conjugate to a contraction.
inline std::optional<std::vector<long>> contracting_direction(const std::vector<LaurentPoly>& abel) {
  // Variables 0..n-1 are t, the rest are the commuting images of z.
  const std::size_t n = abel.size();
  std::set<Exponent> support;
  for (const auto& p : abel)
    for (const auto& [e, c] : p.terms()) {
      Exponent mu(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(n));
      if (std::any_of(mu.begin(), mu.end(), [](int v) { return v != 0; }))
        support.insert(std::move(mu));
    }
  if (support.empty())
    return std::nullopt;
  std::vector<long> w(n, 0);
  for (int pass = 0; pass < 2000; ++pass) {
    bool clean = true;
    for (const auto& mu : support) {
      long dot = 0;
      for (std::size_t k = 0; k < n; ++k)
        dot += mu[k] * w[k];
      if (dot >= 0) {
        for (std::size_t k = 0; k < n; ++k)
          w[k] -= mu[k];
        clean = false;
      }
    }
    if (clean)
      return w;
  }
  return std::nullopt;
}

} // namespace detail

/// A translation vector c making conjugate_by_translation(sigma, c) origin
/// fixing. Staged heuristic on the abelianized action specialized at seeded
/// torus points t*: Newton from the origin (its first step is the linearized
/// solve); failing that, t* = 2^w with sigma(t*) or sigma(1/t*) conjugate to
/// a contraction (M w of one sign), so plain iteration reaches the fixed
/// point. w comes from the coefficient exponents, else at random. Floating
/// approximations are refined by exact Newton steps (iterates kept to bounded
/// denominators), rounded through continued fractions, and accepted only
/// when they pass the symbolic check for all t.
inline std::vector<Rational> fixed_point(const TorusAction& sigma,
                                         const FixedPointOptions& options = {}) {
  const std::size_t n = sigma.rank();
  if (has_zero_constant_part(sigma.map()))
    return std::vector<Rational>(n, Rational(0));

  std::vector<LaurentPoly> abel;
  for (const auto& img : sigma.map().images())
    abel.push_back(abelianize(img));

  auto verify = [&](const std::vector<Rational>& c) {
    std::vector<std::optional<Rational>> values(n);
    values.insert(values.end(), c.begin(), c.end());
    for (std::size_t i = 0; i < n; ++i)
      if (!(l_specialize(abel[i], values) == LaurentPoly::constant(n, c[i])))
        return false;
    return true;
  };
  auto try_rounded = [&](const std::vector<Rational>& x) -> std::optional<std::vector<Rational>> {
    for (long bound : {1000L, 1000000L, 1000000000000L}) {
      std::vector<Rational> candidate;
      for (const auto& xi : x)
        candidate.push_back(round_to_denominator(xi, Integer(bound)));
      if (verify(candidate))
        return candidate;
    }
    return std::nullopt;
  };
  const Integer working_den = Integer(1) << 128;
  auto refine = [&](const detail::SpecializedSystem& sys,
                    const std::vector<double>& approx) -> std::optional<std::vector<Rational>> {
    std::vector<Rational> x;
    for (double v : approx)
      x.push_back(Rational(v));
    if (auto c = try_rounded(x))
      return c;
    for (int step = 0; step < options.newton_steps; ++step) {
      std::vector<Rational> r(n);
      for (std::size_t i = 0; i < n; ++i)
        r[i] = detail::eval_all(sys.g[i], x) - x[i];
      if (std::all_of(r.begin(), r.end(), [](const Rational& v) { return v == 0; }))
        return verify(x) ? std::optional(x) : std::nullopt;
      RationalMatrix m(n, n, Rational(0));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          m(i, j) = detail::eval_all(sys.jac[i][j], x) - (i == j ? 1 : 0);
      std::vector<Rational> delta;
      try {
        delta = solve(m, r);
      } catch (const SingularMatrix&) {
        return std::nullopt;
      }
      double size = 0;
      for (std::size_t i = 0; i < n; ++i) {
        x[i] = round_to_denominator(x[i] - delta[i], working_den);
        size = std::max(size, std::abs(to_double(delta[i])));
      }
      if (auto c = try_rounded(x))
        return c;
      // Exact steps only polish; a large step means the start was poor.
      if (size > 1e-3 * (1 + std::abs(to_double(x[0]))))
        return std::nullopt;
    }
    return std::nullopt;
  };

  const auto contracting = detail::contracting_direction(abel);
  std::mt19937_64 rng(options.seed ^ 0x9e3779b97f4a7c15ULL);
  for (int attempt = 0; attempt < options.attempts; ++attempt) {
    std::vector<Rational> tstar(n);
    for (std::size_t k = 0; k < n; ++k) {
      long num = detail::draw(rng, 2, 5);
      long den = detail::draw(rng, 1, 3);
      if (num == den)
        ++num;
      if (detail::draw(rng, 0, 1))
        num = -num;
      tstar[k] = make_rational(num, den);
    }
    const detail::SpecializedSystem random_point(abel, tstar);
    std::vector<double> y(n, 0.0);
    if (random_point.newton(y, options.newton_steps))
      if (auto c = refine(random_point, y))
        return *c;

    std::vector<long> w(n);
    if (attempt == 0 && contracting) {
      w = *contracting;
    } else {
      do {
        for (auto& wk : w)
          wk = detail::draw(rng, -3, 3);
      } while (std::all_of(w.begin(), w.end(), [](long v) { return v == 0; }));
    }
    for (int sign : {1, -1}) {
      std::vector<Rational> t(n);
      for (std::size_t k = 0; k < n; ++k)
        t[k] = pow(Rational(2), sign * w[k]);
      const detail::SpecializedSystem sys(abel, t);
      if (auto c = sys.iterate(400, try_rounded))
        return *c;
    }
  }
  throw FixedPointNotFound();
}

} // namespace falin

// check_axioms is defined next to the pipeline it reuses.
#include "falin/linearize.hpp"
