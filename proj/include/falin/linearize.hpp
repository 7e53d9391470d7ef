#pragma once

#include <cstddef>
#include <cstdint>
#include <exception>
#include <optional>
#include <utility>
#include <vector>

#include "falin/errors.hpp"
#include "falin/poly_map.hpp"
#include "falin/torus.hpp"

namespace falin {

/// Outcome of the linearization pipeline. beta conjugates the input action
/// into the diagonal one: sigma(t) o beta = beta o tau(t).
struct LinearizationReport {
  std::size_t rank = 0;
  bool effective = false;
  std::vector<Rational> fixed_point;
  RationalMatrix base_change;
  IntMatrix weights;
  std::optional<ScalarMap> beta;
  std::optional<ScalarMap> beta_inverse;
  int degree = 0;
  bool verified = false;
};

class AxiomsFail : public MathError {
public:
  explicit AxiomsFail(AxiomWitness witness)
      : MathError("action axioms fail"), witness_(std::move(witness)) {}
  const AxiomWitness& witness() const noexcept { return witness_; }

private:
  AxiomWitness witness_;
};

/// Carries the partial report (fixed point, base change, weights).
class NotEffective : public MathError {
public:
  explicit NotEffective(LinearizationReport partial)
      : MathError("action is not effective: power matrix is singular"),
        partial_(std::move(partial)) {}
  const LinearizationReport& report() const noexcept { return partial_; }

private:
  LinearizationReport partial_;
};

/// tau(t): z_i -> t^{m_i} z_i, row i of weights as exponent vector.
inline TorusAction build_tau(const IntMatrix& weights) {
  const std::size_t n = weights.rows();
  if (weights.cols() != n)
    throw DimensionMismatch("power matrix must be square");
  const LaurentRing ring{n};
  const auto diag = diagonal_monomials(weights);
  std::vector<ActionPoly> images;
  for (std::size_t i = 0; i < n; ++i)
    images.push_back(
        ActionPoly::monomial(n, ring, Word::letter(static_cast<int>(i + 1)), diag(i, i)));
  return TorusAction(ActionMap(std::move(images)));
}

/// phi(t): z_i -> t^{-m_i} sigma(t)(z_i); requires sigma's linear part to be
/// diag(t^{m_i}). The linear part of phi is the identity.
inline TorusAction build_phi(const TorusAction& sigma, const IntMatrix& weights) {
  const std::size_t n = sigma.rank();
  if (weights.rows() != n || weights.cols() != n)
    throw DimensionMismatch("power matrix has wrong shape");
  if (!(linear_matrix(sigma) == diagonal_monomials(weights)))
    throw DomainError("action is not diagonal with the given weights");
  std::vector<ActionPoly> images;
  for (std::size_t i = 0; i < n; ++i) {
    Exponent inv(n);
    for (std::size_t k = 0; k < n; ++k)
      inv[k] = -weights(i, k);
    const auto factor = LaurentPoly::monomial(std::move(inv));
    ActionPoly p(n, sigma.ring());
    for (const auto& [w, c] : sigma.map().image(i).terms())
      p.add_term(w, c * factor);
    images.push_back(std::move(p));
  }
  TorusAction phi(ActionMap(std::move(images)));
  if (!(linear_matrix(phi) == to_laurent(identity_matrix(n), n)))
    throw InvariantViolation("phi does not have identity linear part");
  return phi;
}

/// G_i: the t-constant part of each image of phi.
inline ScalarMap extract_beta(const TorusAction& phi) {
  std::vector<ScalarPoly> images;
  for (const auto& img : phi.map().images()) {
    ScalarPoly p(img.rank());
    for (const auto& [w, c] : img.terms())
      p.add_term(w, c.constant_term());
    images.push_back(std::move(p));
  }
  return ScalarMap(std::move(images));
}

namespace detail {

/// sigma == beta o tau o beta^-1 given that beta^-1 is a two-sided inverse.
/// Equivalent to sigma o beta == beta o tau but substitutes only the low
/// degree maps, never sigma itself.
inline bool conjugates(const TorusAction& sigma, const ScalarMap& beta,
                       const ScalarMap& beta_inverse, const TorusAction& tau) {
  return compose(compose(beta, tau.map()), beta_inverse) == sigma.map();
}

} // namespace detail

/// sigma(t) o beta == beta o tau(t), exactly over Laurent coefficients.
inline bool verify_conjugation(const TorusAction& sigma, const ScalarMap& beta,
                               const ScalarMap& beta_inverse, const IntMatrix& weights) {
  const std::size_t n = sigma.rank();
  if (beta.rank() != n || beta_inverse.rank() != n)
    return false;
  const auto id = ScalarMap::identity(n);
  if (!(compose(beta, beta_inverse) == id) || !(compose(beta_inverse, beta) == id))
    return false;
  return detail::conjugates(sigma, beta, beta_inverse, build_tau(weights));
}

/// As above; when beta has a polynomial inverse of degree <= deg sigma the
/// cheap form is used, otherwise sigma is substituted into beta directly.
inline bool verify_conjugation(const TorusAction& sigma, const ScalarMap& beta,
                               const IntMatrix& weights) {
  if (beta.rank() != sigma.rank())
    return false;
  const auto tau = build_tau(weights);
  try {
    const auto beta_inverse = invert(beta, std::max(sigma.degree(), 1));
    return detail::conjugates(sigma, beta, beta_inverse, tau);
  } catch (const MathError&) {
  }
  const auto b = promote(beta, sigma.ring());
  return compose(sigma.map(), b) == compose(b, tau.map());
}

struct LinearizeOptions {
  /// Truncation bound for the inverse; defaults to the action's degree.
  std::optional<int> max_degree;
  std::uint64_t seed = 0;
};

namespace detail {

/// The pipeline without the axiom check: fixed point, translation, weight
/// decomposition, effectiveness, phi, beta, inverse, conjugation identity.
inline LinearizationReport linearize_unchecked(const TorusAction& sigma, const LinearizeOptions& options) {
  const std::size_t n = sigma.rank();
  LinearizationReport report;
  report.rank = n;
  report.degree = sigma.degree();

  report.fixed_point = fixed_point(sigma, {.seed = options.seed});
  const ActionMap translated = conjugate_by_translation(sigma.map(), report.fixed_point);
  if (!has_zero_constant_part(translated))
    throw InvariantViolation("translation by the fixed point left a constant part");

  auto [p, m] = weight_decomposition(linear_part(translated));
  report.base_change = p;
  report.weights = m;
  report.effective = is_effective(m);
  if (!report.effective)
    throw NotEffective(report);
  const TorusAction diagonal(conjugate_by_linear(translated, p));
  if (!(linear_matrix(diagonal) == diagonal_monomials(m)))
    throw InvariantViolation("conjugated action is not diagonal");

  const ScalarMap normalized_beta = extract_beta(build_phi(diagonal, m));
  if (!(linear_part(normalized_beta) == identity_matrix(n)))
    throw InvariantViolation("extracted beta does not have identity linear part");

  std::vector<Rational> back(n);
  for (std::size_t i = 0; i < n; ++i)
    back[i] = -report.fixed_point[i];
  const ScalarMap undo = compose(translation<Rational>(back), linear_map<Rational>(inverse(p)));
  ScalarMap beta = compose(undo, normalized_beta);

  const int bound = std::max(options.max_degree.value_or(sigma.degree()), 1);
  std::optional<ScalarMap> beta_inverse;
  try {
    beta_inverse = invert(beta, bound);
  } catch (const NotPolynomialInverseWithinBound&) {
    if (options.max_degree)
      throw;
    throw InvariantViolation("beta has no polynomial inverse of degree <= " +
                             std::to_string(bound));
  }
  // invert has checked both composition orders.
  report.verified = detail::conjugates(sigma, beta, *beta_inverse, build_tau(m));
  report.beta = std::move(beta);
  report.beta_inverse = std::move(beta_inverse);
  return report;
}

} // namespace detail

inline AxiomVerdict check_axioms(const TorusAction& sigma) {
  try {
    if (detail::linearize_unchecked(sigma, {}).verified)
      return {};
  } catch (const Error&) {
  }
  if (detail::satisfies_axioms_infinitesimally(sigma))
    return {};
  return detail::failing_verdict(sigma);
}

/// Full pipeline: check axioms, move the fixed point to the origin,
/// diagonalize the linear part, test effectiveness, build phi, extract beta,
/// invert it and verify the conjugation. The returned beta and beta_inverse
/// refer to the input action (translation and base change folded in).
/// A verified result settles the axioms; otherwise they are checked before
/// the outcome is reported.
inline LinearizationReport linearize(const TorusAction& sigma, const LinearizeOptions& options = {}) {
  std::optional<LinearizationReport> report;
  std::exception_ptr failure;
  try {
    report = detail::linearize_unchecked(sigma, options);
  } catch (const Error&) {
    failure = std::current_exception();
  }
  if (report && report->verified)
    return *report;
  if (!detail::satisfies_axioms_infinitesimally(sigma))
    throw AxiomsFail(*detail::failing_verdict(sigma).witness);
  if (failure)
    std::rethrow_exception(failure);
  return *report;
}

} // namespace falin
