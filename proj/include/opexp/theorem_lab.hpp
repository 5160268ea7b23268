#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "opexp/generators.hpp"
#include "opexp/matrix.hpp"

namespace opexp {

enum class Verdict { confirmed, refuted, hypothesis_not_met, indeterminate };

std::string_view to_string(Verdict verdict);
std::optional<Verdict> parse_verdict(std::string_view text);

/// Residuals at or below `commute` count as zero, at or above `refute` as
/// nonzero; anything strictly between is undecided.
struct Tolerances {
  double commute = 1e-10;
  double refute = 1e-6;

  friend bool operator==(const Tolerances&, const Tolerances&) = default;
};

using ResidualMap = std::map<std::string, double>;

struct CheckReport {
  std::string check_name;
  std::optional<GeneratorConfig> instance_seed;
  std::size_t dim = 0;
  ResidualMap hypothesis_residuals;
  ResidualMap conclusion_residuals;
  /// Informational values; never enter the verdict.
  ResidualMap diagnostics;
  Verdict verdict = Verdict::indeterminate;
  Tolerances tolerances;
};

/// Verdict implied by the residuals:
///  any residual strictly inside (commute, refute) -> indeterminate
///  otherwise any hypothesis residual >= refute     -> hypothesis_not_met
///  otherwise any conclusion residual >= refute     -> refuted
///  otherwise                                       -> confirmed
Verdict classify(const ResidualMap& hypotheses, const ResidualMap& conclusions, const Tolerances& tol);

/// True when the stored verdict matches classify() on the stored residuals.
bool verdict_consistent(const CheckReport& report);

/// Folds the two sides of an equivalence into one conclusion residual:
/// max(lhs, rhs) when both read as zero, 0 when both read as nonzero,
/// max(lhs, rhs) (>= refute) when they disagree, and the undecided value
/// when either side falls in the dead band.
double predicate_agreement(double lhs, double rhs, const Tolerances& tol);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// (0, pi)
Interval zero_to_pi();
/// (-pi/2, pi/2)
Interval symmetric_half_pi();

CheckReport check_exp_identity_selfadjoint(const ComplexMatrix& t, const Tolerances& tol = {});
CheckReport check_fuglede(const ComplexMatrix& a, const ComplexMatrix& n, const Tolerances& tol = {});
CheckReport check_wermuth(const ComplexMatrix& a, const ComplexMatrix& b, const Tolerances& tol = {});
/// `interval` must be (0, pi) or (-pi/2, pi/2).
CheckReport check_selfadjoint_vs_normal(const ComplexMatrix& s, const ComplexMatrix& n, Interval interval,
                                        const Tolerances& tol = {});
CheckReport check_two_normals(const ComplexMatrix& m, const ComplexMatrix& n, const Tolerances& tol = {});
/// With `diagnostics`, the intermediate commutation identities of the
/// transfer argument (Re a, Im a, a^* against exp(n) and n) are recorded.
CheckReport check_main_transfer(const ComplexMatrix& a, const ComplexMatrix& n, const Tolerances& tol = {},
                                bool diagnostics = false);
CheckReport check_sum_normal(const ComplexMatrix& a, const ComplexMatrix& b, const Tolerances& tol = {});
CheckReport check_normality_via_exp(const ComplexMatrix& a, const Tolerances& tol = {});
CheckReport check_square_commute(const ComplexMatrix& a, const ComplexMatrix& b, const Tolerances& tol = {});
CheckReport check_equal_exp_commute(const ComplexMatrix& a, const ComplexMatrix& b, const Tolerances& tol = {});
CheckReport check_selfadjoint_injectivity(const ComplexMatrix& a, const ComplexMatrix& b,
                                          const Tolerances& tol = {});
CheckReport check_unitary_criterion(const ComplexMatrix& a, const Tolerances& tol = {});
CheckReport check_skew_conclusion(const ComplexMatrix& a, const ComplexMatrix& b, const Tolerances& tol = {});

/// A = [[0, pi], [-pi, 0]], B = [[pi, -2 pi], [pi, -pi]]: exp(A) = exp(B) = -I
/// while AB != BA.
std::pair<ComplexMatrix, ComplexMatrix> canonical_counterexample();

}  // namespace opexp
