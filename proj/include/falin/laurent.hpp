#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "falin/errors.hpp"
#include "falin/rational.hpp"

namespace falin {

/// Dense exponent vector of a Laurent monomial; entries may be negative.
using Exponent = std::vector<int>;

/// Sparse Laurent polynomial in a fixed number of commuting variables over
/// the rationals. Terms are ordered lexicographically by exponent vector and
/// no stored coefficient is zero, so equality is structural.
class LaurentPoly {
public:
  using TermMap = std::map<Exponent, Rational>;

  LaurentPoly() = default;
  explicit LaurentPoly(std::size_t nvars) : nvars_(nvars) {}

  static LaurentPoly constant(std::size_t nvars, const Rational& c) {
    LaurentPoly p(nvars);
    p.add_term(Exponent(nvars, 0), c);
    return p;
  }

  static LaurentPoly monomial(Exponent e, const Rational& c = 1) {
    LaurentPoly p(e.size());
    p.add_term(e, c);
    return p;
  }

  /// t_k^power, k zero-based.
  static LaurentPoly variable(std::size_t nvars, std::size_t k, int power = 1) {
    if (k >= nvars)
      throw DimensionMismatch("variable index out of range");
    Exponent e(nvars, 0);
    e[k] = power;
    return monomial(std::move(e));
  }

  std::size_t nvars() const noexcept { return nvars_; }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_monomial() const noexcept { return terms_.size() == 1; }

  Rational coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  Rational constant_term() const { return coefficient(Exponent(nvars_, 0)); }

  void add_term(const Exponent& e, const Rational& c) {
    if (e.size() != nvars_)
      throw DimensionMismatch("exponent length " + std::to_string(e.size()) + " != " +
                              std::to_string(nvars_));
    if (c == 0)
      return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0)
        terms_.erase(it);
    }
  }

  /// Copy with every coefficient multiplied by a nonzero scalar.
  LaurentPoly scaled(const Rational& s) const {
    LaurentPoly r = *this;
    for (auto& [e, c] : r.terms_)
      c *= s;
    return r;
  }

  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

private:
  std::size_t nvars_ = 0;
  TermMap terms_;
};

namespace detail {

inline void require_same_nvars(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.nvars() != b.nvars())
    throw DimensionMismatch("Laurent variable counts differ: " + std::to_string(a.nvars()) +
                            " vs " + std::to_string(b.nvars()));
}

inline Exponent add_exponents(const Exponent& a, const Exponent& b) {
  Exponent e(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    e[i] = a[i] + b[i];
  return e;
}

} // namespace detail

inline LaurentPoly l_add(const LaurentPoly& a, const LaurentPoly& b) {
  detail::require_same_nvars(a, b);
  LaurentPoly r = a;
  for (const auto& [e, c] : b.terms())
    r.add_term(e, c);
  return r;
}

inline LaurentPoly l_scale(const LaurentPoly& a, const Rational& s) {
  if (s == 0)
    return LaurentPoly(a.nvars());
  return a.scaled(s);
}

inline LaurentPoly l_neg(const LaurentPoly& a) { return l_scale(a, -1); }

inline LaurentPoly l_sub(const LaurentPoly& a, const LaurentPoly& b) {
  detail::require_same_nvars(a, b);
  LaurentPoly r = a;
  for (const auto& [e, c] : b.terms())
    r.add_term(e, -c);
  return r;
}

inline LaurentPoly l_mul(const LaurentPoly& a, const LaurentPoly& b) {
  detail::require_same_nvars(a, b);
  LaurentPoly r(a.nvars());
  for (const auto& [ea, ca] : a.terms())
    for (const auto& [eb, cb] : b.terms())
      r.add_term(detail::add_exponents(ea, eb), ca * cb);
  return r;
}

inline LaurentPoly l_pow(const LaurentPoly& a, unsigned k) {
  LaurentPoly r = LaurentPoly::constant(a.nvars(), 1);
  for (unsigned i = 0; i < k; ++i)
    r = l_mul(r, a);
  return r;
}

/// Evaluation at a point of the torus; every coordinate must be nonzero.
inline Rational l_eval(const LaurentPoly& p, std::span<const Rational> point) {
  if (point.size() != p.nvars())
    throw DimensionMismatch("evaluation point has wrong length");
  for (const auto& x : point)
    if (x == 0)
      throw DomainError("torus coordinates must be nonzero");
  Rational sum = 0;
  for (const auto& [e, c] : p.terms()) {
    Rational term = c;
    for (std::size_t k = 0; k < e.size(); ++k)
      if (e[k] != 0)
        term *= pow(point[k], e[k]);
    sum += term;
  }
  return sum;
}

/// Evaluates the variables that carry a value and keeps the others, which are
/// renumbered in their original order. A zero value is allowed only for
/// variables that never occur with a negative exponent.
inline LaurentPoly l_specialize(const LaurentPoly& p,
                                std::span<const std::optional<Rational>> values) {
  if (values.size() != p.nvars())
    throw DimensionMismatch("specialization vector has wrong length");
  std::size_t kept = 0;
  for (const auto& v : values)
    kept += v ? 0 : 1;
  LaurentPoly r(kept);
  Exponent e_out(kept);
  for (const auto& [e, c] : p.terms()) {
    Rational term = c;
    std::size_t j = 0;
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (values[k]) {
        if (e[k] != 0)
          term *= pow(*values[k], e[k]);
      } else {
        e_out[j++] = e[k];
      }
    }
    r.add_term(e_out, term);
  }
  return r;
}

/// Exponent-linear substitution t_k -> images[k]. Each image must be a
/// monomial with coefficient 1 in target_nvars variables.
inline LaurentPoly l_subst_monomial(const LaurentPoly& p, std::span<const LaurentPoly> images,
                                    std::size_t target_nvars) {
  if (images.size() != p.nvars())
    throw DimensionMismatch("one image per variable required");
  std::vector<const Exponent*> image_exps;
  image_exps.reserve(images.size());
  for (const auto& img : images) {
    if (img.nvars() != target_nvars)
      throw DimensionMismatch("image lives over the wrong variable set");
    if (!img.is_monomial() || img.terms().begin()->second != 1)
      throw DomainError("substitution image is not a monomial with coefficient 1");
    image_exps.push_back(&img.terms().begin()->first);
  }
  LaurentPoly r(target_nvars);
  for (const auto& [e, c] : p.terms()) {
    Exponent out(target_nvars, 0);
    for (std::size_t k = 0; k < e.size(); ++k)
      for (std::size_t j = 0; j < target_nvars; ++j)
        out[j] += e[k] * (*image_exps[k])[j];
    r.add_term(out, c);
  }
  return r;
}

inline LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) { return l_add(a, b); }
inline LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return l_sub(a, b); }
inline LaurentPoly operator-(const LaurentPoly& a) { return l_neg(a); }
inline LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) { return l_mul(a, b); }
inline LaurentPoly& operator+=(LaurentPoly& a, const LaurentPoly& b) {
  detail::require_same_nvars(a, b);
  for (const auto& [e, c] : b.terms())
    a.add_term(e, c);
  return a;
}

} // namespace falin
