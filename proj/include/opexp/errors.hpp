#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace opexp {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  DimensionMismatch(std::size_t lhs, std::size_t rhs)
      : Error("dimension mismatch: " + std::to_string(lhs) + " vs " + std::to_string(rhs)),
        lhs_(lhs),
        rhs_(rhs) {}

  std::size_t lhs() const noexcept { return lhs_; }
  std::size_t rhs() const noexcept { return rhs_; }

 private:
  std::size_t lhs_;
  std::size_t rhs_;
};

class InvalidMatrix : public Error {
 public:
  using Error::Error;
};

/// Raised by routines that require a normal matrix; carries comm_residual(t, t*).
class NotNormal : public Error {
 public:
  explicit NotNormal(double residual)
      : Error("matrix is not normal (normality residual " + std::to_string(residual) + ")"),
        residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

class NotHermitian : public Error {
 public:
  explicit NotHermitian(double residual)
      : Error("matrix is not Hermitian (relative residual " + std::to_string(residual) + ")"),
        residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(int sweeps, double off_diagonal)
      : Error("eigensolver did not converge after " + std::to_string(sweeps) +
              " sweeps (off-diagonal norm " + std::to_string(off_diagonal) + ")"),
        off_diagonal_(off_diagonal) {}

  double off_diagonal() const noexcept { return off_diagonal_; }

 private:
  double off_diagonal_;
};

class SingularMatrix : public Error {
 public:
  using Error::Error;
};

class OverflowError : public Error {
 public:
  using Error::Error;
};

class GeneratorError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace opexp

namespace opexp {

class UnknownCheck : public Error {
 public:
  explicit UnknownCheck(const std::string& name) : Error("unknown check: " + name) {}
};

}  // namespace opexp
