#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "falin/errors.hpp"
#include "falin/free_poly.hpp"
#include "falin/matrix.hpp"

namespace falin {

/// Endomorphism of the free algebra, stored as the images of z_1..z_n.
template <Coefficient C>
class PolyMap {
public:
  using coeff_type = C;
  using ring_type = ring_of<C>;
  using poly_type = FreePoly<C>;

  PolyMap() = default;

  explicit PolyMap(std::vector<poly_type> images) : images_(std::move(images)) {
    if (images_.empty())
      throw DimensionMismatch("a map needs at least one generator");
    for (const auto& img : images_) {
      images_.front().require_compatible(img);
      if (img.rank() != images_.size())
        throw DimensionMismatch("map of rank " + std::to_string(images_.size()) +
                                " has an image over rank " + std::to_string(img.rank()));
    }
  }

  static PolyMap identity(std::size_t rank, ring_type ring = {}) {
    std::vector<poly_type> images;
    for (std::size_t i = 1; i <= rank; ++i)
      images.push_back(poly_type::generator(rank, ring, static_cast<int>(i)));
    return PolyMap(std::move(images));
  }

  std::size_t rank() const noexcept { return images_.size(); }
  ring_type ring() const { return images_.empty() ? ring_type{} : images_.front().ring(); }
  const std::vector<poly_type>& images() const noexcept { return images_; }
  /// Image of z_{i+1}.
  const poly_type& image(std::size_t i) const { return images_.at(i); }

  int degree() const noexcept {
    int d = -1;
    for (const auto& img : images_)
      d = std::max(d, img.degree());
    return d;
  }

  bool is_identity() const { return *this == identity(rank(), ring()); }

  friend bool operator==(const PolyMap&, const PolyMap&) = default;

private:
  std::vector<poly_type> images_;
};

using ScalarMap = PolyMap<Rational>;
using ActionMap = PolyMap<LaurentPoly>;

inline ActionMap promote(const ScalarMap& f, LaurentRing ring) {
  std::vector<ActionPoly> images;
  for (const auto& img : f.images())
    images.push_back(promote(img, ring));
  return ActionMap(std::move(images));
}

/// compose(g, f) is the endomorphism g o f: z_i -> g(f(z_i)), i.e. the image
/// f_i with every letter z_j replaced by g_j. Linear parts multiply as
/// A(g o f) = A(f) * A(g).
template <Coefficient C>
PolyMap<C> compose(const PolyMap<C>& g, const PolyMap<C>& f) {
  if (g.rank() != f.rank())
    throw DimensionMismatch("composition of maps of different rank");
  std::vector<FreePoly<C>> images;
  images.reserve(f.rank());
  for (const auto& fi : f.images())
    images.push_back(f_substitute(fi, g.images()));
  return PolyMap<C>(std::move(images));
}

inline ActionMap compose(const ActionMap& g, const ScalarMap& f) {
  if (g.rank() != f.rank())
    throw DimensionMismatch("composition of maps of different rank");
  std::vector<ActionPoly> images;
  for (const auto& fi : f.images())
    images.push_back(f_substitute(fi, g.images()));
  return ActionMap(std::move(images));
}

inline ActionMap compose(const ScalarMap& g, const ActionMap& f) {
  if (g.rank() != f.rank())
    throw DimensionMismatch("composition of maps of different rank");
  std::vector<ActionPoly> images;
  for (const auto& fi : f.images())
    images.push_back(f_substitute(fi, g.images()));
  return ActionMap(std::move(images));
}

/// Entry (i, j) is the coefficient of z_{j+1} in the image of z_{i+1}.
template <Coefficient C>
Matrix<C> linear_part(const PolyMap<C>& f) {
  const std::size_t n = f.rank();
  const C zero = coeff_traits<C>::from_rational(f.ring(), 0);
  Matrix<C> a(n, n, zero);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      a(i, j) = f.image(i).coefficient(Word::letter(static_cast<int>(j + 1)));
  return a;
}

template <Coefficient C>
std::vector<C> constant_part(const PolyMap<C>& f) {
  std::vector<C> c;
  c.reserve(f.rank());
  for (const auto& img : f.images())
    c.push_back(img.coefficient(Word{}));
  return c;
}

template <Coefficient C>
bool has_zero_constant_part(const PolyMap<C>& f) {
  for (const auto& img : f.images())
    if (img.terms().contains(Word{}))
      return false;
  return true;
}

/// The linear map whose linear_part is m.
template <Coefficient C>
PolyMap<C> linear_map(const RationalMatrix& m, ring_of<C> ring = {}) {
  if (m.rows() != m.cols())
    throw DimensionMismatch("linear map from a non-square matrix");
  const std::size_t n = m.rows();
  std::vector<FreePoly<C>> images;
  for (std::size_t i = 0; i < n; ++i) {
    FreePoly<C> p(n, ring);
    for (std::size_t j = 0; j < n; ++j)
      p.add_term(Word::letter(static_cast<int>(j + 1)),
                 coeff_traits<C>::from_rational(ring, m(i, j)));
    images.push_back(std::move(p));
  }
  return PolyMap<C>(std::move(images));
}

/// z_i -> z_i + c_i.
template <Coefficient C>
PolyMap<C> translation(const std::vector<Rational>& c, ring_of<C> ring = {}) {
  const std::size_t n = c.size();
  std::vector<FreePoly<C>> images;
  for (std::size_t i = 0; i < n; ++i) {
    auto p = FreePoly<C>::generator(n, ring, static_cast<int>(i + 1));
    p.add_term(Word{}, coeff_traits<C>::from_rational(ring, c[i]));
    images.push_back(std::move(p));
  }
  return PolyMap<C>(std::move(images));
}

namespace detail {

inline std::vector<Rational> negated(const std::vector<Rational>& c) {
  std::vector<Rational> r;
  r.reserve(c.size());
  for (const auto& x : c)
    r.push_back(-x);
  return r;
}

} // namespace detail

/// z_i -> f_i(z + c) - c_i. When c is a fixed point of the abelianized map
/// the result has zero constant part.
template <Coefficient C>
PolyMap<C> conjugate_by_translation(const PolyMap<C>& f, const std::vector<Rational>& c) {
  if (c.size() != f.rank())
    throw DimensionMismatch("translation vector has wrong length");
  if (std::all_of(c.begin(), c.end(), [](const Rational& x) { return x == 0; }))
    return f;
  const auto shift = translation<Rational>(c);
  const auto unshift = translation<Rational>(detail::negated(c));
  return compose(shift, compose(f, unshift));
}

/// Conjugate of f by the linear automorphism P, oriented so that the result
/// has linear part P^-1 * A(f) * P.
template <Coefficient C>
PolyMap<C> conjugate_by_linear(const PolyMap<C>& f, const RationalMatrix& p) {
  if (p.rows() != f.rank() || p.cols() != f.rank())
    throw DimensionMismatch("base change has wrong shape");
  const RationalMatrix p_inv = inverse(p);
  return compose(linear_map<Rational>(p), compose(f, linear_map<Rational>(p_inv)));
}

/// Two-sided inverse of f among maps of degree <= max_degree.
///
/// The constant part is split off as a translation; the origin-fixing part
/// f0 = A z + q(z) is inverted degree by degree in the power-series
/// completion through h <- A^-1 (z - q(h)), each pass fixing one more
/// homogeneous degree. A candidate is checked exactly in both composition
/// orders; besides the final one, a candidate is tried whenever a pass adds
/// nothing new, since a polynomial inverse usually shows up that way early.
inline ScalarMap invert(const ScalarMap& f, int max_degree) {
  const std::size_t n = f.rank();
  RationalMatrix a = linear_part(f);
  RationalMatrix a_inv;
  try {
    a_inv = inverse(a);
  } catch (const SingularMatrix&) {
    throw SingularLinearPart();
  }
  if (max_degree < 1)
    throw NotPolynomialInverseWithinBound(max_degree);

  std::vector<Rational> shift = constant_part(f);
  std::vector<ScalarPoly> nonlinear;
  for (const auto& img : f.images()) {
    ScalarPoly q(n);
    for (const auto& [w, c] : img.terms())
      if (w.size() >= 2)
        q.add_term(w, c);
    nonlinear.push_back(std::move(q));
  }

  auto apply_a_inv = [&](const std::vector<ScalarPoly>& v) {
    std::vector<ScalarPoly> out;
    for (std::size_t i = 0; i < n; ++i) {
      ScalarPoly s(n);
      for (std::size_t j = 0; j < n; ++j)
        if (a_inv(i, j) != 0)
          s.add_scaled(v[j], a_inv(i, j));
      out.push_back(std::move(s));
    }
    return out;
  };

  // f = f0 o S with S the translation by the constant part, so f^-1 = S^-1 o f0^-1.
  const auto unshift = translation<Rational>(detail::negated(shift));
  const auto id = ScalarMap::identity(n);
  auto accept = [&](const std::vector<ScalarPoly>& h) -> std::optional<ScalarMap> {
    ScalarMap candidate = compose(unshift, ScalarMap(h));
    if (compose(candidate, f) == id && compose(f, candidate) == id)
      return candidate;
    return std::nullopt;
  };

  std::vector<ScalarPoly> z;
  for (std::size_t i = 1; i <= n; ++i)
    z.push_back(ScalarPoly::generator(n, {}, static_cast<int>(i)));
  std::vector<ScalarPoly> h = apply_a_inv(z);
  const auto bound = static_cast<std::size_t>(max_degree);
  for (std::size_t d = 2; d <= bound; ++d) {
    std::vector<ScalarPoly> rhs;
    for (std::size_t i = 0; i < n; ++i)
      rhs.push_back(z[i] - f_substitute(nonlinear[i], h, d));
    auto next = apply_a_inv(rhs);
    const bool stalled = next == h;
    h = std::move(next);
    if (stalled && d < bound)
      if (auto inv = accept(h))
        return *inv;
  }
  if (auto inv = accept(h))
    return *inv;
  throw NotPolynomialInverseWithinBound(max_degree);
}

inline ScalarMap invert(const ScalarMap& f) { return invert(f, std::max(f.degree(), 1)); }

} // namespace falin
