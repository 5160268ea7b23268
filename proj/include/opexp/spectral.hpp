#pragma once

#include <vector>

#include "opexp/matrix.hpp"

namespace opexp {

/// Cartesian decomposition t = real_part + i * imag_part, both Hermitian.
struct CartesianPair {
  ComplexMatrix real_part;
  ComplexMatrix imag_part;
};

/// Unitary eigenbasis (eigenvectors in columns) and matching eigenvalues.
///
/// Inside a degenerate eigenvalue cluster only the spanned invariant subspace
/// is meaningful; the individual columns depend on the basis chosen by the
/// solver.
struct SpectralDecomposition {
  ComplexMatrix basis;
  std::vector<Complex> eigenvalues;

  /// basis * diag(eigenvalues) * basis^*
  ComplexMatrix reconstruct() const;
};

/// Verdict on strict containment of a Hermitian spectrum in (lo, hi).
struct IntervalCertificate {
  double lo = 0.0;
  double hi = 0.0;
  double min_eig = 0.0;
  double max_eig = 0.0;
  double margin = 0.0;
  bool holds = false;

  /// 0 when the certificate holds, otherwise how far the spectrum overshoots
  /// the margin-shrunk interval.
  double violation() const;
};

inline constexpr int kJacobiMaxSweeps = 30;
inline constexpr double kJacobiRelativeTolerance = 1e-14;
inline constexpr double kHermitianInputTolerance = 1e-12;
inline constexpr double kNormalInputTolerance = 1e-10;
inline constexpr double kClusterGapRelative = 1e-8;

CartesianPair cartesian(const ComplexMatrix& t);

/// True iff comm_residual(t, t*) <= tol.
bool is_normal(const ComplexMatrix& t, double tol);

/// Cyclic complex Jacobi. Eigenvalues are real and sorted ascending.
/// Throws NotHermitian or ConvergenceError.
SpectralDecomposition eig_hermitian(const ComplexMatrix& h);

/// Joint diagonalization of the commuting Hermitian parts of a normal matrix.
/// Eigenvalues sorted lexicographically by (re, im). Throws NotNormal.
SpectralDecomposition eig_normal(const ComplexMatrix& n);

/// Max |lambda|; only defined for normal input (throws NotNormal otherwise).
double spectral_radius(const ComplexMatrix& t);

/// 1e-8 * max(1, ||h||_F)
double default_margin(const ComplexMatrix& h);

/// Certifies sigma(h) inside (lo + margin, hi - margin). h must be Hermitian.
IntervalCertificate certify_interval(const ComplexMatrix& h, double lo, double hi, double margin);
IntervalCertificate certify_interval(const ComplexMatrix& h, double lo, double hi);

}  // namespace opexp
