#pragma once

#include <string_view>

#include "opexp/matrix.hpp"

namespace opexp {

enum class ExpMethod { scaling_squaring, spectral_path };

std::string_view to_string(ExpMethod method);

struct ExpResult {
  ComplexMatrix value;
  ExpMethod method;
  /// scaling_squaring: relative backward-error bound guaranteed by the
  /// parameter choice. spectral_path: relative reconstruction residual of
  /// the eigendecomposition.
  double est_error;
};

/// Scaling and squaring with a diagonal Pade approximant of degree 3..13.
/// Throws OverflowError when the squaring phase leaves the double range.
ExpResult expm(const ComplexMatrix& t);

/// U diag(exp(lambda)) U^* from eig_normal. Throws NotNormal.
ExpResult expm_normal(const ComplexMatrix& n);

/// ||exp(t^*) - exp(t)^*||_F / max(1, ||exp(t)||_F)
double exp_adjoint_check(const ComplexMatrix& t);

}  // namespace opexp
