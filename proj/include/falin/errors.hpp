#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace falin {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Operands live in different rings (rank, torus dimension or coefficient kind differ).
class DimensionMismatch : public Error {
public:
  using Error::Error;
};

/// An argument lies outside the domain of an operation (zero torus coordinate,
/// non-monomial substitution image, ...).
class DomainError : public Error {
public:
  using Error::Error;
};

/// Text input that does not follow the document grammar. Always positioned.
class ParseError : public Error {
public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
              message),
        line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

/// A mathematical precondition failed on valid input: the object simply does
/// not have the requested property.
class MathError : public Error {
public:
  using Error::Error;
};

class SingularMatrix : public MathError {
public:
  SingularMatrix() : MathError("matrix is singular") {}
};

class SingularLinearPart : public MathError {
public:
  SingularLinearPart() : MathError("linear part is singular") {}
};

class NotPolynomialInverseWithinBound : public MathError {
public:
  explicit NotPolynomialInverseWithinBound(int bound)
      : MathError("no polynomial inverse of degree <= " + std::to_string(bound)), bound_(bound) {}

  int bound() const noexcept { return bound_; }

private:
  int bound_;
};

class NotDiagonalizable : public MathError {
public:
  explicit NotDiagonalizable(const std::string& detail)
      : MathError("linear part is not diagonalizable: " + detail) {}
};

class FixedPointNotFound : public MathError {
public:
  FixedPointNotFound() : MathError("fixed point search exhausted") {}
};

class DegreeBlowupExceeded : public Error {
public:
  DegreeBlowupExceeded(int degree, int cap)
      : Error("intermediate degree " + std::to_string(degree) + " exceeds cap " +
              std::to_string(cap)) {}
};

/// An identity the library relies on did not hold. Indicates a bug.
class InvariantViolation : public Error {
public:
  using Error::Error;
};

} // namespace falin
