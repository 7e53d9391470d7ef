#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "falin/errors.hpp"

namespace falin {

/// Exact rational scalar. GMP keeps it canonical: positive denominator,
/// reduced, zero as 0/1.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0)
    throw DomainError("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// "p/q", or "p" when the denominator is 1.
inline std::string to_string(const Rational& r) { return r.get_str(10); }

inline Rational parse_rational(std::string_view text) {
  Rational r;
  if (text.empty() || r.set_str(std::string(text), 10) != 0 || r.get_den() == 0)
    throw DomainError("malformed rational '" + std::string(text) + "'");
  r.canonicalize();
  return r;
}

inline Rational pow(const Rational& base, long exponent) {
  if (exponent < 0) {
    if (base == 0)
      throw DomainError("negative power of zero");
    Rational inv = 1 / base;
    return pow(inv, -exponent);
  }
  Integer num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(exponent));
  return make_rational(num, den);
}

inline Integer floor(const Rational& x) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

/// Continued-fraction convergents of x, in order of increasing denominator.
/// The last entry is x itself.
inline std::vector<Rational> convergents(const Rational& x) {
  std::vector<Rational> out;
  Integer h_prev = 1, h_prev2 = 0, k_prev = 0, k_prev2 = 1;
  Rational rest = x;
  while (true) {
    Integer a = floor(rest);
    Integer h = a * h_prev + h_prev2;
    Integer k = a * k_prev + k_prev2;
    out.push_back(make_rational(h, k));
    Rational frac = rest - a;
    if (frac == 0)
      break;
    rest = 1 / frac;
    h_prev2 = h_prev;
    h_prev = h;
    k_prev2 = k_prev;
    k_prev = k;
  }
  return out;
}

/// Last convergent of x whose denominator does not exceed max_den.
inline Rational round_to_denominator(const Rational& x, const Integer& max_den) {
  Rational best = floor(x);
  for (const auto& c : convergents(x)) {
    if (c.get_den() > max_den)
      break;
    best = c;
  }
  return best;
}

inline double to_double(const Rational& r) { return r.get_d(); }

} // namespace falin
