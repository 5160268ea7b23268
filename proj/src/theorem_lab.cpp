#include "opexp/theorem_lab.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "opexp/errors.hpp"
#include "opexp/expm.hpp"
#include "opexp/spectral.hpp"

namespace opexp {
namespace {

constexpr double kPi = std::numbers::pi;

bool in_band(double x, const Tolerances& tol) { return x > tol.commute && x < tol.refute; }

CheckReport finish(std::string name, std::size_t dim, ResidualMap hypotheses, ResidualMap conclusions,
                   ResidualMap diagnostics, const Tolerances& tol) {
  CheckReport report;
  report.check_name = std::move(name);
  report.dim = dim;
  report.hypothesis_residuals = std::move(hypotheses);
  report.conclusion_residuals = std::move(conclusions);
  report.diagnostics = std::move(diagnostics);
  report.tolerances = tol;
  report.verdict = classify(report.hypothesis_residuals, report.conclusion_residuals, tol);
  return report;
}

// A certificate is a decided predicate: failing it is a definite hypothesis
// failure, never a dead-band value.
double certificate_residual(const ComplexMatrix& h, Interval interval, const Tolerances& tol) {
  const IntervalCertificate cert = certify_interval(h, interval.lo, interval.hi);
  if (cert.holds) return 0.0;
  return std::max(tol.refute, cert.violation());
}

double imag_certificate(const ComplexMatrix& t, Interval interval, const Tolerances& tol) {
  return certificate_residual(cartesian(t).imag_part, interval, tol);
}

ComplexMatrix exp_of(const ComplexMatrix& t) { return expm(t).value; }

double skew_residual(const ComplexMatrix& b) {
  return frobenius_norm(add(b, adjoint(b))) / std::max(1.0, frobenius_norm(b));
}

bool same_interval(Interval x, Interval y) {
  return std::abs(x.lo - y.lo) <= 1e-12 && std::abs(x.hi - y.hi) <= 1e-12;
}

}  // namespace

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::confirmed:
      return "confirmed";
    case Verdict::refuted:
      return "refuted";
    case Verdict::hypothesis_not_met:
      return "hypothesis_not_met";
    case Verdict::indeterminate:
      return "indeterminate";
  }
  return "indeterminate";
}

std::optional<Verdict> parse_verdict(std::string_view text) {
  for (Verdict v : {Verdict::confirmed, Verdict::refuted, Verdict::hypothesis_not_met, Verdict::indeterminate})
    if (to_string(v) == text) return v;
  return std::nullopt;
}

Verdict classify(const ResidualMap& hypotheses, const ResidualMap& conclusions, const Tolerances& tol) {
  auto undecided = [&](const auto& entry) { return std::isnan(entry.second) || in_band(entry.second, tol); };
  auto nonzero = [&](const auto& entry) { return entry.second >= tol.refute; };
  if (std::any_of(hypotheses.begin(), hypotheses.end(), undecided) ||
      std::any_of(conclusions.begin(), conclusions.end(), undecided))
    return Verdict::indeterminate;
  if (std::any_of(hypotheses.begin(), hypotheses.end(), nonzero)) return Verdict::hypothesis_not_met;
  if (std::any_of(conclusions.begin(), conclusions.end(), nonzero)) return Verdict::refuted;
  return Verdict::confirmed;
}

bool verdict_consistent(const CheckReport& report) {
  return report.verdict == classify(report.hypothesis_residuals, report.conclusion_residuals, report.tolerances);
}

double predicate_agreement(double lhs, double rhs, const Tolerances& tol) {
  const bool lhs_zero = lhs <= tol.commute;
  const bool rhs_zero = rhs <= tol.commute;
  const bool lhs_nonzero = lhs >= tol.refute;
  const bool rhs_nonzero = rhs >= tol.refute;
  if (lhs_zero && rhs_zero) return std::max(lhs, rhs);
  if (lhs_nonzero && rhs_nonzero) return 0.0;
  if ((lhs_zero && rhs_nonzero) || (lhs_nonzero && rhs_zero)) return std::max(lhs, rhs);
  double undecided = 0.0;
  for (double x : {lhs, rhs})
    if (!(x <= tol.commute) && !(x >= tol.refute)) undecided = std::max(undecided, x);
  return std::isnan(lhs) || std::isnan(rhs) ? std::nan("") : undecided;
}

Interval zero_to_pi() { return {0.0, kPi}; }
Interval symmetric_half_pi() { return {-kPi / 2.0, kPi / 2.0}; }

CheckReport check_exp_identity_selfadjoint(const ComplexMatrix& t, const Tolerances& tol) {
  const ComplexMatrix e = exp_of(t);
  return finish("exp_identity_selfadjoint", t.dim(),
                {{"self_adjoint", hermitian_residual(t)},
                 {"exp_is_identity", frobenius_norm(sub(e, ComplexMatrix::identity(t.dim())))}},
                {{"is_zero", frobenius_norm(t)}}, {}, tol);
}

CheckReport check_fuglede(const ComplexMatrix& a, const ComplexMatrix& n, const Tolerances& tol) {
  return finish("fuglede", a.dim(), {{"n_normal", normality_residual(n)}, {"a_commutes_n", comm_residual(a, n)}},
                {{"a_commutes_n_adjoint", comm_residual(a, adjoint(n))}}, {}, tol);
}

CheckReport check_wermuth(const ComplexMatrix& a, const ComplexMatrix& b, const Tolerances& tol) {
  const double exp_comm = comm_residual(exp_of(a), exp_of(b));
  const double comm = comm_residual(a, b);
  return finish("wermuth", a.dim(), {{"a_self_adjoint", hermitian_residual(a)}, {"b_self_adjoint", hermitian_residual(b)}},
                {{"predicate_agreement", predicate_agreement(exp_comm, comm, tol)}},
                {{"exp_commutator", exp_comm}, {"commutator", comm}}, tol);
}

CheckReport check_selfadjoint_vs_normal(const ComplexMatrix& s, const ComplexMatrix& n, Interval interval,
                                        const Tolerances& tol) {
  if (!same_interval(interval, zero_to_pi()) && !same_interval(interval, symmetric_half_pi()))
    throw Error("selfadjoint_vs_normal accepts only the intervals (0, pi) and (-pi/2, pi/2)");
  const double exp_comm = comm_residual(exp_of(s), exp_of(n));
  const double comm = comm_residual(s, n);
  return finish("selfadjoint_vs_normal", s.dim(),
                {{"s_self_adjoint", hermitian_residual(s)},
                 {"n_normal", normality_residual(n)},
                 {"im_n_in_interval", imag_certificate(n, interval, tol)}},
                {{"predicate_agreement", predicate_agreement(exp_comm, comm, tol)}},
                {{"exp_commutator", exp_comm}, {"commutator", comm}}, tol);
}

CheckReport check_two_normals(const ComplexMatrix& m, const ComplexMatrix& n, const Tolerances& tol) {
  const double exp_comm = comm_residual(exp_of(m), exp_of(n));
  const double comm = comm_residual(m, n);
  return finish("two_normals", m.dim(),
                {{"m_normal", normality_residual(m)},
                 {"n_normal", normality_residual(n)},
                 {"im_m_in_interval", imag_certificate(m, zero_to_pi(), tol)},
                 {"im_n_in_interval", imag_certificate(n, zero_to_pi(), tol)}},
                {{"predicate_agreement", predicate_agreement(exp_comm, comm, tol)}},
                {{"exp_commutator", exp_comm}, {"commutator", comm}}, tol);
}

CheckReport check_main_transfer(const ComplexMatrix& a, const ComplexMatrix& n, const Tolerances& tol,
                                bool diagnostics) {
  const ComplexMatrix e = exp_of(n);
  const double exp_comm = comm_residual(a, e);
  const double comm = comm_residual(a, n);
  ResidualMap diag{{"a_commutes_exp_n", exp_comm}, {"a_commutes_n", comm}};
  if (diagnostics) {
    const CartesianPair parts = cartesian(a);
    diag["adjoint_a_commutes_exp_n"] = comm_residual(adjoint(a), e);
    diag["re_a_commutes_exp_n"] = comm_residual(parts.real_part, e);
    diag["im_a_commutes_exp_n"] = comm_residual(parts.imag_part, e);
    diag["re_a_commutes_n"] = comm_residual(parts.real_part, n);
    diag["im_a_commutes_n"] = comm_residual(parts.imag_part, n);
  }
  return finish("main_transfer", a.dim(),
                {{"n_normal", normality_residual(n)}, {"im_n_in_interval", imag_certificate(n, zero_to_pi(), tol)}},
                {{"predicate_agreement", predicate_agreement(exp_comm, comm, tol)}}, std::move(diag), tol);
}

CheckReport check_sum_normal(const ComplexMatrix& a, const ComplexMatrix& b, const Tolerances& tol) {
  const ComplexMatrix sum = add(a, b);
  const ComplexMatrix ea = exp_of(a);
  const ComplexMatrix eb = exp_of(b);
  const ComplexMatrix ab = mul(ea, eb);
  return finish("sum_normal", a.dim(),
                {{"sum_normal", normality_residual(sum)},
                 {"im_sum_in_interval", imag_certificate(sum, zero_to_pi(), tol)},
                 {"exp_commute", relative_distance(ab, mul(eb, ea))},
                 {"exp_product_is_exp_sum", relative_distance(ab, exp_of(sum))}},
                {{"a_commutes_b", comm_residual(a, b)}}, {}, tol);
}

CheckReport check_normality_via_exp(const ComplexMatrix& a, const Tolerances& tol) {
  const ComplexMatrix a_adj = adjoint(a);
  const ComplexMatrix ea = exp_of(a);
  const ComplexMatrix ea_adj = exp_of(a_adj);
  const ComplexMatrix product = mul(ea, ea_adj);
  const double identity =
      std::max(relative_distance(product, mul(ea_adj, ea)), relative_distance(product, exp_of(add(a, a_adj))));
  const double normality = normality_residual(a);
  return finish("normality_via_exp", a.dim(), {}, {{"predicate_agreement", predicate_agreement(identity, normality, tol)}},
                {{"exp_identity", identity}, {"normality", normality}}, tol);
}

CheckReport check_square_commute(const ComplexMatrix& a, const ComplexMatrix& b, const Tolerances& tol) {
  return finish("square_commute", a.dim(),
                {{"a_normal", normality_residual(a)},
                 {"im_a_in_interval", imag_certificate(a, zero_to_pi(), tol)},
                 {"exp_equal", relative_distance(exp_of(a), exp_of(b))}},
                {{"a_squared_commutes_b", comm_residual(mul(a, a), b)}}, {}, tol);
}

CheckReport check_equal_exp_commute(const ComplexMatrix& a, const ComplexMatrix& b, const Tolerances& tol) {
  return finish("equal_exp_commute", a.dim(),
                {{"a_normal", normality_residual(a)},
                 {"im_a_in_interval", imag_certificate(a, zero_to_pi(), tol)},
                 {"exp_equal", relative_distance(exp_of(a), exp_of(b))}},
                {{"a_commutes_b", comm_residual(a, b)}}, {}, tol);
}

CheckReport check_selfadjoint_injectivity(const ComplexMatrix& a, const ComplexMatrix& b, const Tolerances& tol) {
  const double exp_diff = relative_distance(exp_of(a), exp_of(b));
  const double diff = relative_distance(a, b);
  return finish("selfadjoint_injectivity", a.dim(),
                {{"a_self_adjoint", hermitian_residual(a)}, {"b_self_adjoint", hermitian_residual(b)}},
                {{"predicate_agreement", predicate_agreement(exp_diff, diff, tol)}},
                {{"exp_difference", exp_diff}, {"difference", diff}}, tol);
}

CheckReport check_unitary_criterion(const ComplexMatrix& a, const Tolerances& tol) {
  const ComplexMatrix u = exp_of(scale(a, Complex(0.0, 1.0)));
  const double unitarity = frobenius_norm(sub(mul(u, adjoint(u)), ComplexMatrix::identity(a.dim())));
  const double self_adjoint = hermitian_residual(a);
  return finish("unitary_criterion", a.dim(), {{"a_normal", normality_residual(a)}},
                {{"predicate_agreement", predicate_agreement(self_adjoint, unitarity, tol)}},
                {{"self_adjoint", self_adjoint}, {"exp_ia_unitarity", unitarity}}, tol);
}

CheckReport check_skew_conclusion(const ComplexMatrix& a, const ComplexMatrix& b, const Tolerances& tol) {
  return finish("skew_conclusion", a.dim(),
                {{"a_self_adjoint", hermitian_residual(a)},
                 {"b_normal", normality_residual(b)},
                 {"exp_equal", relative_distance(exp_of(scale(a, Complex(0.0, 1.0))), exp_of(b))}},
                {{"b_skew", skew_residual(b)}}, {}, tol);
}

std::pair<ComplexMatrix, ComplexMatrix> canonical_counterexample() {
  ComplexMatrix a{{0.0, kPi}, {-kPi, 0.0}};
  ComplexMatrix b{{kPi, -2.0 * kPi}, {kPi, -kPi}};
  return {std::move(a), std::move(b)};
}

}  // namespace opexp
