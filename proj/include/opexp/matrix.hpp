#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace opexp {

using Complex = std::complex<double>;

/// Dense square complex matrix stored row-major.
///
/// Construction from raw entries rejects NaN/Inf. Arithmetic is done through
/// the free functions below; all of them return fresh values.
class ComplexMatrix {
 public:
  /// Zero matrix of the given dimension (dim >= 1).
  explicit ComplexMatrix(std::size_t dim);
  ComplexMatrix(std::size_t dim, std::vector<Complex> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::span<const Complex> values);

  std::size_t dim() const noexcept { return dim_; }
  std::span<const Complex> entries() const noexcept { return entries_; }

  const Complex& operator()(std::size_t row, std::size_t col) const {
    return entries_[row * dim_ + col];
  }
  Complex& operator()(std::size_t row, std::size_t col) { return entries_[row * dim_ + col]; }

  bool all_finite() const noexcept;

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t dim_;
  std::vector<Complex> entries_;
};

ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix sub(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix mul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix scale(const ComplexMatrix& a, Complex factor);
ComplexMatrix adjoint(const ComplexMatrix& a);
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

inline ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) { return add(a, b); }
inline ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) { return sub(a, b); }
inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) { return mul(a, b); }
inline ComplexMatrix operator*(Complex s, const ComplexMatrix& a) { return scale(a, s); }
inline ComplexMatrix operator-(const ComplexMatrix& a) { return scale(a, -1.0); }

double frobenius_norm(const ComplexMatrix& a);
/// Maximum absolute column sum.
double one_norm(const ComplexMatrix& a);
Complex trace(const ComplexMatrix& a);

/// ||ab - ba||_F / max(1, ||a||_F ||b||_F)
double comm_residual(const ComplexMatrix& a, const ComplexMatrix& b);

/// ||x - y||_F / max(1, ||x||_F)
double relative_distance(const ComplexMatrix& x, const ComplexMatrix& y);

/// ||t - t*||_F / max(1, ||t||_F)
double hermitian_residual(const ComplexMatrix& t);

/// comm_residual(t, t*)
double normality_residual(const ComplexMatrix& t);

/// LU factorization with partial pivoting, P a = L u packed in one matrix.
class LuDecomposition {
 public:
  explicit LuDecomposition(const ComplexMatrix& a);

  bool singular() const noexcept { return singular_; }
  Complex determinant() const;
  /// Solves a x = rhs column by column. Throws SingularMatrix.
  ComplexMatrix solve(const ComplexMatrix& rhs) const;

 private:
  ComplexMatrix lu_;
  std::vector<std::size_t> pivots_;
  int sign_ = 1;
  bool singular_ = false;
};

Complex determinant(const ComplexMatrix& a);
ComplexMatrix inverse(const ComplexMatrix& a);

}  // namespace opexp
