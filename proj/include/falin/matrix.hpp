#pragma once

#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

#include "falin/errors.hpp"
#include "falin/rational.hpp"

namespace falin {

/// Dense row-major matrix.
template <class T>
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  Matrix(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_)
        throw DimensionMismatch("ragged matrix literal");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(std::size_t n, const T& zero, const T& one) {
    Matrix m(n, n, zero);
    for (std::size_t i = 0; i < n; ++i)
      m(i, i) = one;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                          data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }

  std::vector<T> column(std::size_t j) const {
    std::vector<T> c;
    c.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      c.push_back((*this)(i, j));
    return c;
  }

  Matrix transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        t(j, i) = (*this)(i, j);
    return t;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RationalMatrix = Matrix<Rational>;
using IntMatrix = Matrix<int>;

/// Product with an explicit zero, for entry types that need one (Laurent
/// polynomials know their variable count).
template <class T>
Matrix<T> multiply(const Matrix<T>& a, const Matrix<T>& b, const T& zero) {
  if (a.cols() != b.rows())
    throw DimensionMismatch("matrix product shape mismatch");
  Matrix<T> r(a.rows(), b.cols(), zero);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k)
      for (std::size_t j = 0; j < b.cols(); ++j)
        r(i, j) = r(i, j) + a(i, k) * b(k, j);
  return r;
}

inline RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  return multiply(a, b, Rational(0));
}

inline RationalMatrix identity_matrix(std::size_t n) {
  return RationalMatrix::identity(n, Rational(0), Rational(1));
}

inline RationalMatrix to_rational(const IntMatrix& m) {
  RationalMatrix r(m.rows(), m.cols(), Rational(0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      r(i, j) = m(i, j);
  return r;
}

struct RowEchelon {
  RationalMatrix reduced;
  std::vector<std::size_t> pivots; ///< pivot column of each nonzero row
};

/// Reduced row echelon form by Gauss-Jordan elimination.
inline RowEchelon rref(RationalMatrix m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t pivot = row;
    while (pivot < m.rows() && m(pivot, col) == 0)
      ++pivot;
    if (pivot == m.rows())
      continue;
    if (pivot != row)
      for (std::size_t j = 0; j < m.cols(); ++j)
        std::swap(m(pivot, j), m(row, j));
    Rational inv = 1 / m(row, col);
    for (std::size_t j = col; j < m.cols(); ++j)
      m(row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col) == 0)
        continue;
      Rational f = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j)
        m(i, j) -= f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(m), std::move(pivots)};
}

inline std::size_t rank(const RationalMatrix& m) { return rref(m).pivots.size(); }

/// Basis of the right null space. The vector for free column f has a 1 at f
/// and is zero past f.
inline std::vector<std::vector<Rational>> kernel(const RationalMatrix& m) {
  auto [r, pivots] = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots)
    is_pivot[p] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f])
      continue;
    std::vector<Rational> v(m.cols(), Rational(0));
    v[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i)
      v[pivots[i]] = -r(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

inline RationalMatrix inverse(const RationalMatrix& m) {
  if (m.rows() != m.cols())
    throw DimensionMismatch("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  RationalMatrix aug(n, 2 * n, Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j)
      aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  auto [r, pivots] = rref(std::move(aug));
  if (pivots.size() < n || pivots[n - 1] != n - 1)
    throw SingularMatrix();
  RationalMatrix inv(n, n, Rational(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      inv(i, j) = r(i, n + j);
  return inv;
}

/// Solves m x = b; throws SingularMatrix unless m is square and invertible.
inline std::vector<Rational> solve(const RationalMatrix& m, const std::vector<Rational>& b) {
  const std::size_t n = m.rows();
  if (m.cols() != n || b.size() != n)
    throw DimensionMismatch("solve shape mismatch");
  RationalMatrix aug(n, n + 1, Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j)
      aug(i, j) = m(i, j);
    aug(i, n) = b[i];
  }
  auto [r, pivots] = rref(std::move(aug));
  if (pivots.size() < n || pivots[n - 1] != n - 1)
    throw SingularMatrix();
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i)
    x[i] = r(i, n);
  return x;
}

inline Rational determinant(const RationalMatrix& m) {
  if (m.rows() != m.cols())
    throw DimensionMismatch("determinant of a non-square matrix");
  RationalMatrix a = m;
  const std::size_t n = a.rows();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a(pivot, col) == 0)
      ++pivot;
    if (pivot == n)
      return 0;
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j)
        std::swap(a(pivot, j), a(col, j));
      det = -det;
    }
    det *= a(col, col);
    for (std::size_t i = col + 1; i < n; ++i) {
      if (a(i, col) == 0)
        continue;
      Rational f = a(i, col) / a(col, col);
      for (std::size_t j = col; j < n; ++j)
        a(i, j) -= f * a(col, j);
    }
  }
  return det;
}

/// Exact integer determinant (fraction-free Bareiss elimination).
inline Integer determinant(const IntMatrix& m) {
  if (m.rows() != m.cols())
    throw DimensionMismatch("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0)
    return 1;
  Matrix<Integer> a(n, n, Integer(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      a(i, j) = m(i, j);
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0)
        ++p;
      if (p == n)
        return 0;
      for (std::size_t j = 0; j < n; ++j)
        std::swap(a(p, j), a(k, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer num = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

} // namespace falin
