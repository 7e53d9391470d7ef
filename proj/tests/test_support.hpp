#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "falin/falin.hpp"

namespace falin::testing {

inline long draw(std::mt19937_64& rng, long lo, long hi) { return detail::draw(rng, lo, hi); }

inline Rational small_rational(std::mt19937_64& rng) {
  return make_rational(draw(rng, -4, 4), draw(rng, 1, 3));
}

inline LaurentPoly random_laurent(std::mt19937_64& rng, std::size_t nvars, int terms = 3,
                                  int exp_bound = 2) {
  LaurentPoly p(nvars);
  const long count = draw(rng, 0, terms);
  for (long k = 0; k < count; ++k) {
    Exponent e(nvars);
    for (auto& x : e)
      x = static_cast<int>(draw(rng, -exp_bound, exp_bound));
    p.add_term(e, small_rational(rng));
  }
  return p;
}

inline Word random_word(std::mt19937_64& rng, std::size_t rank, int max_len) {
  Word w;
  const long len = draw(rng, 0, max_len);
  for (long i = 0; i < len; ++i)
    w.push_back(static_cast<int>(draw(rng, 1, static_cast<long>(rank))));
  return w;
}

inline ScalarPoly random_scalar_poly(std::mt19937_64& rng, std::size_t rank, int terms = 4,
                                     int max_len = 3) {
  ScalarPoly p(rank);
  const long count = draw(rng, 0, terms);
  for (long k = 0; k < count; ++k)
    p.add_term(random_word(rng, rank, max_len), small_rational(rng));
  return p;
}

inline ActionPoly random_action_poly(std::mt19937_64& rng, std::size_t rank, int terms = 3,
                                     int max_len = 2) {
  ActionPoly p(rank, LaurentRing{rank});
  const long count = draw(rng, 0, terms);
  for (long k = 0; k < count; ++k)
    p.add_term(random_word(rng, rank, max_len), random_laurent(rng, rank, 2, 1));
  return p;
}

inline ScalarMap random_scalar_map(std::mt19937_64& rng, std::size_t rank, int terms = 3,
                                   int max_len = 2) {
  std::vector<ScalarPoly> images;
  for (std::size_t i = 0; i < rank; ++i)
    images.push_back(random_scalar_poly(rng, rank, terms, max_len));
  return ScalarMap(std::move(images));
}

// Oracle: evaluation of a free polynomial at a tuple of square rational
// matrices. Word products are computed letter by letter, independently of
// the library's multiplication and substitution code.
using Mat = RationalMatrix;

inline Mat random_mat(std::mt19937_64& rng, std::size_t k) {
  Mat m(k, k, Rational(0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      m(i, j) = static_cast<int>(draw(rng, -3, 3));
  return m;
}

inline Mat mat_add(const Mat& a, const Mat& b) {
  Mat r = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      r(i, j) += b(i, j);
  return r;
}

inline Mat mat_scale(const Mat& a, const Rational& s) {
  Mat r = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      r(i, j) *= s;
  return r;
}

inline Mat eval_at_matrices(const ScalarPoly& p, const std::vector<Mat>& point) {
  const std::size_t k = point.front().rows();
  Mat sum(k, k, Rational(0));
  for (const auto& [w, c] : p.terms()) {
    Mat prod = identity_matrix(k);
    for (std::size_t i = 0; i < w.size(); ++i)
      prod = prod * point[static_cast<std::size_t>(w[i] - 1)];
    sum = mat_add(sum, mat_scale(prod, c));
  }
  return sum;
}

inline std::vector<Mat> random_point(std::mt19937_64& rng, std::size_t rank, std::size_t k = 2) {
  std::vector<Mat> pt;
  for (std::size_t i = 0; i < rank; ++i)
    pt.push_back(random_mat(rng, k));
  return pt;
}

inline IntMatrix int_matrix(std::initializer_list<std::initializer_list<int>> rows) {
  return IntMatrix(rows);
}

inline RationalMatrix rat_matrix(std::initializer_list<std::initializer_list<int>> rows) {
  return to_rational(IntMatrix(rows));
}

inline const char* ex_a_text() {
  return "rank 2\n"
         "action\n"
         "z1 -> t1*z1\n"
         "z2 -> t2*z2 + (t2 - t1^2)*z1^2\n"
         "end\n";
}

} // namespace falin::testing
