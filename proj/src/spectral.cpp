#include "opexp/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "opexp/errors.hpp"

namespace opexp {
namespace {

double off_diagonal_norm(const ComplexMatrix& a) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (i != j) sum += std::norm(a(i, j));
  return std::sqrt(sum);
}

// Applies a <- w^* a w and v <- v w for the plane rotation w acting on (p, q).
void rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q, Complex wpp,
            Complex wpq, Complex wqp, Complex wqq) {
  const std::size_t n = a.dim();
  for (std::size_t k = 0; k < n; ++k) {
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    a(k, p) = akp * wpp + akq * wqp;
    a(k, q) = akp * wpq + akq * wqq;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const Complex apk = a(p, k);
    const Complex aqk = a(q, k);
    a(p, k) = std::conj(wpp) * apk + std::conj(wqp) * aqk;
    a(q, k) = std::conj(wpq) * apk + std::conj(wqq) * aqk;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const Complex vkp = v(k, p);
    const Complex vkq = v(k, q);
    v(k, p) = vkp * wpp + vkq * wqp;
    v(k, q) = vkp * wpq + vkq * wqq;
  }
}

ComplexMatrix select_columns(const ComplexMatrix& m, std::span<const std::size_t> order) {
  ComplexMatrix out(m.dim());
  for (std::size_t j = 0; j < order.size(); ++j)
    for (std::size_t i = 0; i < m.dim(); ++i) out(i, j) = m(i, order[j]);
  return out;
}

// Modified Gram-Schmidt on the columns, in place.
void orthonormalize_columns(ComplexMatrix& q) {
  const std::size_t n = q.dim();
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < j; ++k) {
      Complex dot{};
      for (std::size_t i = 0; i < n; ++i) dot += std::conj(q(i, k)) * q(i, j);
      for (std::size_t i = 0; i < n; ++i) q(i, j) -= dot * q(i, k);
    }
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) norm += std::norm(q(i, j));
    norm = std::sqrt(norm);
    for (std::size_t i = 0; i < n; ++i) q(i, j) /= norm;
  }
}

}  // namespace

ComplexMatrix SpectralDecomposition::reconstruct() const {
  return mul(mul(basis, ComplexMatrix::diagonal(eigenvalues)), adjoint(basis));
}

double IntervalCertificate::violation() const {
  if (holds) return 0.0;
  return std::max({0.0, (lo + margin) - min_eig, max_eig - (hi - margin)});
}

CartesianPair cartesian(const ComplexMatrix& t) {
  const std::size_t n = t.dim();
  ComplexMatrix re(n);
  ComplexMatrix im(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Complex s = t(i, j) + std::conj(t(j, i));
      const Complex d = t(i, j) - std::conj(t(j, i));
      re(i, j) = 0.5 * s;
      // d / (2i), written out so that im(j, i) == conj(im(i, j)) bit for bit.
      im(i, j) = Complex(0.5 * d.imag(), -0.5 * d.real());
    }
  }
  return {std::move(re), std::move(im)};
}

bool is_normal(const ComplexMatrix& t, double tol) { return normality_residual(t) <= tol; }

SpectralDecomposition eig_hermitian(const ComplexMatrix& h) {
  const std::size_t n = h.dim();
  const double norm = frobenius_norm(h);
  const double asym = frobenius_norm(sub(h, adjoint(h)));
  if (asym > kHermitianInputTolerance * norm) throw NotHermitian(asym / std::max(norm, 1.0));

  ComplexMatrix a = scale(add(h, adjoint(h)), 0.5);
  ComplexMatrix v = ComplexMatrix::identity(n);

  const double tol = kJacobiRelativeTolerance * norm;
  const double negligible = 1e-18 * norm;
  double off = off_diagonal_norm(a);
  int sweep = 0;
  while (off > tol) {
    if (sweep == kJacobiMaxSweeps) throw ConvergenceError(sweep, off);
    ++sweep;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double g = std::abs(apq);
        if (g <= negligible) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const Complex phase = apq / g;
        const double theta = (aqq - app) / (2.0 * g);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::hypot(theta, 1.0));
        const double c = 1.0 / std::hypot(t, 1.0);
        const double s = t * c;
        const Complex conj_phase = std::conj(phase);
        rotate(a, v, p, q, c, s, -s * conj_phase, c * conj_phase);
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
    off = off_diagonal_norm(a);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  SpectralDecomposition out{select_columns(v, order), {}};
  out.eigenvalues.reserve(n);
  for (std::size_t k : order) out.eigenvalues.emplace_back(a(k, k).real(), 0.0);
  return out;
}

SpectralDecomposition eig_normal(const ComplexMatrix& n_mat) {
  const double residual = normality_residual(n_mat);
  if (residual > kNormalInputTolerance) throw NotNormal(residual);

  const std::size_t n = n_mat.dim();
  const CartesianPair parts = cartesian(n_mat);
  const SpectralDecomposition re_eig = eig_hermitian(parts.real_part);
  const double gap = kClusterGapRelative * frobenius_norm(parts.real_part);

  // Within each cluster of Re N, the compression of Im N is diagonalized.
  ComplexMatrix basis = re_eig.basis;
  std::size_t start = 0;
  while (start < n) {
    std::size_t end = start + 1;
    while (end < n && re_eig.eigenvalues[end].real() - re_eig.eigenvalues[end - 1].real() <= gap) ++end;
    const std::size_t k = end - start;
    if (k > 1) {
      ComplexMatrix block(k);
      for (std::size_t r = 0; r < k; ++r) {
        for (std::size_t c = 0; c < k; ++c) {
          Complex acc{};
          for (std::size_t i = 0; i < n; ++i) {
            Complex row{};
            for (std::size_t j = 0; j < n; ++j) row += parts.imag_part(i, j) * re_eig.basis(j, start + c);
            acc += std::conj(re_eig.basis(i, start + r)) * row;
          }
          block(r, c) = acc;
        }
      }
      block = scale(add(block, adjoint(block)), 0.5);
      const SpectralDecomposition inner = eig_hermitian(block);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t c = 0; c < k; ++c) {
          Complex acc{};
          for (std::size_t r = 0; r < k; ++r) acc += re_eig.basis(i, start + r) * inner.basis(r, c);
          basis(i, start + c) = acc;
        }
      }
    }
    start = end;
  }

  // Near-degenerate Re N eigenvalues just outside the cluster gap leave small
  // off-diagonal couplings; a few first-order eigenvector corrections on
  // basis^* N basis remove them.
  const double norm = std::max(frobenius_norm(n_mat), std::numeric_limits<double>::min());
  for (int pass = 0; pass < 3; ++pass) {
    const ComplexMatrix m = mul(mul(adjoint(basis), n_mat), basis);
    if (off_diagonal_norm(m) <= 1e-15 * norm) break;
    ComplexMatrix correction = ComplexMatrix::identity(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        const Complex split = m(j, j) - m(i, i);
        if (std::abs(split) <= 1e-12 * norm) continue;
        correction(i, j) = m(i, j) / split;
      }
    }
    basis = mul(basis, correction);
    orthonormalize_columns(basis);
  }

  const ComplexMatrix m = mul(mul(adjoint(basis), n_mat), basis);
  std::vector<Complex> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = m(i, i);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    if (values[i].real() != values[j].real()) return values[i].real() < values[j].real();
    return values[i].imag() < values[j].imag();
  });

  SpectralDecomposition out{select_columns(basis, order), {}};
  out.eigenvalues.reserve(n);
  for (std::size_t k : order) out.eigenvalues.push_back(values[k]);
  return out;
}

double spectral_radius(const ComplexMatrix& t) {
  const SpectralDecomposition d = eig_normal(t);
  double r = 0.0;
  for (const Complex& z : d.eigenvalues) r = std::max(r, std::abs(z));
  return r;
}

double default_margin(const ComplexMatrix& h) { return 1e-8 * std::max(1.0, frobenius_norm(h)); }

IntervalCertificate certify_interval(const ComplexMatrix& h, double lo, double hi, double margin) {
  if (!(margin >= 0.0)) throw Error("certificate margin must be nonnegative");
  const SpectralDecomposition d = eig_hermitian(h);
  IntervalCertificate cert;
  cert.lo = lo;
  cert.hi = hi;
  cert.margin = margin;
  cert.min_eig = d.eigenvalues.front().real();
  cert.max_eig = d.eigenvalues.back().real();
  cert.holds = cert.min_eig >= lo + margin && cert.max_eig <= hi - margin;
  return cert;
}

IntervalCertificate certify_interval(const ComplexMatrix& h, double lo, double hi) {
  return certify_interval(h, lo, hi, default_margin(h));
}

}  // namespace opexp
