#include "opexp/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "opexp/errors.hpp"

namespace opexp {
namespace {

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch(a.dim(), b.dim());
}

bool finite(const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim) {
  if (dim == 0) throw InvalidMatrix("matrix dimension must be at least 1");
}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<Complex> entries)
    : dim_(dim), entries_(std::move(entries)) {
  if (dim == 0) throw InvalidMatrix("matrix dimension must be at least 1");
  if (entries_.size() != dim * dim) {
    throw InvalidMatrix("expected " + std::to_string(dim * dim) + " entries, got " +
                        std::to_string(entries_.size()));
  }
  if (!all_finite()) throw InvalidMatrix("matrix entries must be finite");
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : dim_(rows.size()) {
  if (dim_ == 0) throw InvalidMatrix("matrix dimension must be at least 1");
  entries_.reserve(dim_ * dim_);
  for (const auto& row : rows) {
    if (row.size() != dim_) throw InvalidMatrix("matrix rows must all have length " + std::to_string(dim_));
    entries_.insert(entries_.end(), row.begin(), row.end());
  }
  if (!all_finite()) throw InvalidMatrix("matrix entries must be finite");
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> values) {
  ComplexMatrix m(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

bool ComplexMatrix::all_finite() const noexcept {
  return std::all_of(entries_.begin(), entries_.end(), finite);
}

ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b);
  ComplexMatrix c(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) c(i, j) = a(i, j) + b(i, j);
  return c;
}

ComplexMatrix sub(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b);
  ComplexMatrix c(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) c(i, j) = a(i, j) - b(i, j);
  return c;
}

ComplexMatrix mul(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b);
  const std::size_t n = a.dim();
  ComplexMatrix c(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

ComplexMatrix scale(const ComplexMatrix& a, Complex factor) {
  ComplexMatrix c(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) c(i, j) = factor * a(i, j);
  return c;
}

ComplexMatrix adjoint(const ComplexMatrix& a) {
  ComplexMatrix c(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) c(j, i) = std::conj(a(i, j));
  return c;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b);
  return sub(mul(a, b), mul(b, a));
}

double frobenius_norm(const ComplexMatrix& a) {
  // Scaled accumulation keeps huge or tiny entries from overflowing the sum.
  double scale_factor = 0.0;
  for (const Complex& z : a.entries()) scale_factor = std::max(scale_factor, std::abs(z));
  if (scale_factor == 0.0 || !std::isfinite(scale_factor)) return scale_factor;
  double sum = 0.0;
  for (const Complex& z : a.entries()) sum += std::norm(z / scale_factor);
  return scale_factor * std::sqrt(sum);
}

double one_norm(const ComplexMatrix& a) {
  double best = 0.0;
  for (std::size_t j = 0; j < a.dim(); ++j) {
    double col = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) col += std::abs(a(i, j));
    best = std::max(best, col);
  }
  return best;
}

Complex trace(const ComplexMatrix& a) {
  Complex t{};
  for (std::size_t i = 0; i < a.dim(); ++i) t += a(i, i);
  return t;
}

double comm_residual(const ComplexMatrix& a, const ComplexMatrix& b) {
  const double denom = std::max(1.0, frobenius_norm(a) * frobenius_norm(b));
  return frobenius_norm(commutator(a, b)) / denom;
}

double relative_distance(const ComplexMatrix& x, const ComplexMatrix& y) {
  return frobenius_norm(sub(x, y)) / std::max(1.0, frobenius_norm(x));
}

double hermitian_residual(const ComplexMatrix& t) {
  return frobenius_norm(sub(t, adjoint(t))) / std::max(1.0, frobenius_norm(t));
}

double normality_residual(const ComplexMatrix& t) { return comm_residual(t, adjoint(t)); }

LuDecomposition::LuDecomposition(const ComplexMatrix& a) : lu_(a), pivots_(a.dim()) {
  const std::size_t n = a.dim();
  for (std::size_t i = 0; i < n; ++i) pivots_[i] = i;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    double best = std::abs(lu_(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(lu_(i, k)) > best) {
        best = std::abs(lu_(i, k));
        pivot = i;
      }
    }
    if (best == 0.0) {
      singular_ = true;
      continue;
    }
    if (pivot != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(pivot, j));
      std::swap(pivots_[k], pivots_[pivot]);
      sign_ = -sign_;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const Complex factor = lu_(i, k) / lu_(k, k);
      lu_(i, k) = factor;
      for (std::size_t j = k + 1; j < n; ++j) lu_(i, j) -= factor * lu_(k, j);
    }
  }
}

Complex LuDecomposition::determinant() const {
  if (singular_) return Complex{};
  Complex det = static_cast<double>(sign_);
  for (std::size_t i = 0; i < lu_.dim(); ++i) det *= lu_(i, i);
  return det;
}

ComplexMatrix LuDecomposition::solve(const ComplexMatrix& rhs) const {
  require_same_dim(lu_, rhs);
  if (singular_) throw SingularMatrix("cannot solve with a singular matrix");
  const std::size_t n = lu_.dim();
  ComplexMatrix x(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) x(i, j) = rhs(pivots_[i], j);
  for (std::size_t col = 0; col < n; ++col) {
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t k = 0; k < i; ++k) x(i, col) -= lu_(i, k) * x(k, col);
    for (std::size_t i = n; i-- > 0;) {
      for (std::size_t k = i + 1; k < n; ++k) x(i, col) -= lu_(i, k) * x(k, col);
      x(i, col) /= lu_(i, i);
    }
  }
  return x;
}

Complex determinant(const ComplexMatrix& a) { return LuDecomposition(a).determinant(); }

ComplexMatrix inverse(const ComplexMatrix& a) {
  return LuDecomposition(a).solve(ComplexMatrix::identity(a.dim()));
}

}  // namespace opexp
