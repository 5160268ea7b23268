#include "opexp/suite.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <tuple>

#include "opexp/errors.hpp"
#include "opexp/rng.hpp"

namespace opexp {
namespace {

constexpr double kPi = std::numbers::pi;

constexpr std::array<std::string_view, 13> kCheckNames{
    "exp_identity_selfadjoint", "fuglede",          "wermuth",          "selfadjoint_vs_normal",
    "two_normals",              "main_transfer",    "sum_normal",       "normality_via_exp",
    "square_commute",           "equal_exp_commute", "selfadjoint_injectivity", "unitary_criterion",
    "skew_conclusion"};

constexpr Complex kI{0.0, 1.0};

GeneratorConfig with_box(GeneratorConfig cfg, SpectrumBox box) {
  cfg.spectrum_box = box;
  return cfg;
}

// Sub-instances of one trial get their own derived seeds.
GeneratorConfig part(const GeneratorConfig& cfg, std::uint64_t k) { return split(cfg, 1000 + k); }

const SpectrumBox kUnitReal{-1.0, 1.0, 0.0, 0.0};
const SpectrumBox kPositiveReal{0.1, 1.0, 0.0, 0.0};
const SpectrumBox kTransferBox{-1.0, 1.0, 0.1, kPi - 0.1};
const SpectrumBox kHalfTransferBox{-1.0, 1.0, 0.05, kPi / 2.0 - 0.05};
const SpectrumBox kSymmetricBox{-1.0, 1.0, -kPi / 2.0 + 0.1, kPi / 2.0 - 0.1};
const SpectrumBox kGeneralBox{-1.0, 1.0, 0.1, 1.0};

std::vector<Complex> real_spectrum(Rng& rng, std::size_t n) {
  std::vector<Complex> v(n);
  for (auto& z : v) z = rng.uniform(-1.0, 1.0);
  return v;
}

std::vector<Complex> boxed_spectrum(Rng& rng, std::size_t n, const SpectrumBox& box) {
  std::vector<Complex> v(n);
  for (auto& z : v) z = {rng.uniform(box.re_lo, box.re_hi), rng.uniform(box.im_lo, box.im_hi)};
  return v;
}

ComplexMatrix gaussian_matrix(Rng& rng, std::size_t n) {
  ComplexMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = rng.complex_normal();
  return m;
}

// Streams for suite-local sampling, distinct from the generator streams.
Rng suite_rng(const GeneratorConfig& cfg) { return Rng(cfg.seed, 0x5117E); }

void require_counterexample_support(std::string_view name, const SuiteOptions& options) {
  if (options.family != InstanceFamily::counterexample) return;
  static constexpr std::array<std::string_view, 4> supported{"main_transfer", "selfadjoint_vs_normal",
                                                             "square_commute", "equal_exp_commute"};
  if (std::find(supported.begin(), supported.end(), name) == supported.end())
    throw Error("check " + std::string(name) + " has no counterexample instance family");
}

CheckReport standard_trial(std::string_view name, const GeneratorConfig& cfg, std::size_t trial,
                           const SuiteOptions& options) {
  const Tolerances& tol = options.tolerances;
  const std::size_t n = cfg.dim;
  Rng rng = suite_rng(cfg);

  if (name == "exp_identity_selfadjoint") {
    switch (trial % 4) {
      case 0:
        return check_exp_identity_selfadjoint(ComplexMatrix(n), tol);
      case 1:  // exp(2 pi i P) = I but 2 pi i P is not self-adjoint
        return check_exp_identity_selfadjoint(scale(random_projection(cfg, n >= 2), Complex(0.0, 2.0 * kPi)), tol);
      case 2:
        return check_exp_identity_selfadjoint(random_hermitian(with_box(cfg, kPositiveReal)), tol);
      default:
        return check_exp_identity_selfadjoint(scale(random_hermitian(with_box(cfg, kUnitReal)), 1e-14), tol);
    }
  }
  if (name == "fuglede") {
    const auto [a, nm] = commuting_pair(cfg, {.nonnormal_a = trial % 2 == 1});
    return check_fuglede(a, nm, tol);
  }
  if (name == "wermuth") {
    if (trial % 2 == 0) {
      const ComplexMatrix u = random_unitary(cfg);
      return check_wermuth(hermitian_part(conjugate_diagonal(u, real_spectrum(rng, n))),
                           hermitian_part(conjugate_diagonal(u, real_spectrum(rng, n))), tol);
    }
    return check_wermuth(random_hermitian(with_box(part(cfg, 0), kUnitReal)),
                         random_hermitian(with_box(part(cfg, 1), kUnitReal)), tol);
  }
  if (name == "selfadjoint_vs_normal") {
    const bool symmetric = options.interval.lo < 0.0;
    const SpectrumBox box = symmetric ? kSymmetricBox : kTransferBox;
    const std::size_t cases = symmetric ? 3 : 2;
    switch (trial % cases) {
      case 0: {
        const ComplexMatrix u = random_unitary(cfg);
        return check_selfadjoint_vs_normal(hermitian_part(conjugate_diagonal(u, real_spectrum(rng, n))),
                                           conjugate_diagonal(u, boxed_spectrum(rng, n, box)), options.interval, tol);
      }
      case 1:
        return check_selfadjoint_vs_normal(random_hermitian(with_box(part(cfg, 0), kUnitReal)),
                                           random_normal_constrained(with_box(part(cfg, 1), box)), options.interval,
                                           tol);
      default:  // Im n = 0 sits inside (-pi/2, pi/2)
        return check_selfadjoint_vs_normal(random_hermitian(with_box(part(cfg, 0), kUnitReal)),
                                           random_hermitian(with_box(part(cfg, 1), kUnitReal)), options.interval, tol);
    }
  }
  if (name == "two_normals") {
    switch (trial % 3) {
      case 0: {
        const ComplexMatrix u = random_unitary(cfg);
        return check_two_normals(conjugate_diagonal(u, boxed_spectrum(rng, n, kTransferBox)),
                                 conjugate_diagonal(u, boxed_spectrum(rng, n, kTransferBox)), tol);
      }
      case 1:
        return check_two_normals(random_normal_constrained(with_box(part(cfg, 0), kTransferBox)),
                                 random_normal_constrained(with_box(part(cfg, 1), kTransferBox)), tol);
      default: {
        const ComplexMatrix m = random_normal_constrained(with_box(cfg, kTransferBox));
        return check_two_normals(m, m, tol);
      }
    }
  }
  if (name == "main_transfer") {
    const auto [a, nm] = exp_commutant_pair(cfg.spectrum_box ? cfg : with_box(cfg, kTransferBox));
    return check_main_transfer(a, nm, tol, options.diagnostics);
  }
  if (name == "sum_normal") {
    switch (trial % 3) {
      case 0: {
        const ComplexMatrix u = random_unitary(cfg);
        return check_sum_normal(conjugate_diagonal(u, boxed_spectrum(rng, n, kHalfTransferBox)),
                                conjugate_diagonal(u, boxed_spectrum(rng, n, kHalfTransferBox)), tol);
      }
      case 1:
        return check_sum_normal(random_normal_constrained(with_box(part(cfg, 0), kHalfTransferBox)),
                                random_normal_constrained(with_box(part(cfg, 1), kHalfTransferBox)), tol);
      default: {
        const ComplexMatrix a = random_normal_constrained(with_box(cfg, kGeneralBox));
        return check_sum_normal(a, -a, tol);
      }
    }
  }
  if (name == "normality_via_exp") {
    switch (trial % 4) {
      case 0:
        return check_normality_via_exp(random_hermitian(with_box(cfg, kUnitReal)), tol);
      case 1:
        return check_normality_via_exp(random_normal_constrained(with_box(cfg, {-1.0, 1.0, -1.0, 1.0})), tol);
      case 2:
        return check_normality_via_exp(gaussian_matrix(rng, n), tol);
      default: {
        // Nonzero nilpotent part in a random basis (dim 1 falls back to a scalar).
        ComplexMatrix core = ComplexMatrix::diagonal(boxed_spectrum(rng, n, {-1.0, 1.0, -1.0, 1.0}));
        if (n >= 2) core(0, 1) = 1.0;
        const ComplexMatrix u = random_unitary(cfg);
        return check_normality_via_exp(mul(mul(u, core), adjoint(u)), tol);
      }
    }
  }
  if (name == "square_commute" || name == "equal_exp_commute") {
    const GeneratorConfig boxed = cfg.spectrum_box ? cfg : with_box(cfg, kTransferBox);
    ComplexMatrix a(n);
    ComplexMatrix b(n);
    if (trial % 4 == 3) {
      a = random_normal_constrained(boxed);
      b = a;
    } else {
      // dim 1 admits no nontrivial projection; P = 1 still gives b != a.
      std::tie(a, b) = equal_exp_pair(boxed, n >= 2 ? std::nullopt : std::optional<std::vector<bool>>{{true}});
    }
    return name == "square_commute" ? check_square_commute(a, b, tol) : check_equal_exp_commute(a, b, tol);
  }
  if (name == "selfadjoint_injectivity") {
    const ComplexMatrix a = random_hermitian(with_box(part(cfg, 0), kUnitReal));
    if (trial % 2 == 0) return check_selfadjoint_injectivity(a, a, tol);
    ComplexMatrix e = random_hermitian(with_box(part(cfg, 1), kUnitReal));
    const double norm = frobenius_norm(e);
    e = norm > 0.0 ? scale(e, 1.0 / norm) : ComplexMatrix::identity(n);
    return check_selfadjoint_injectivity(a, add(a, scale(e, 0.5)), tol);
  }
  if (name == "unitary_criterion") {
    switch (trial % 3) {
      case 0:
        return check_unitary_criterion(random_hermitian(with_box(cfg, kUnitReal)), tol);
      case 1:
        return check_unitary_criterion(scale(random_hermitian(with_box(cfg, kPositiveReal)), kI), tol);
      default:
        return check_unitary_criterion(random_normal_constrained(with_box(cfg, kGeneralBox)), tol);
    }
  }
  if (name == "skew_conclusion") {
    switch (trial % 3) {
      case 0: {
        const ComplexMatrix a = random_hermitian(with_box(cfg, kUnitReal));
        return check_skew_conclusion(a, scale(a, kI), tol);
      }
      case 1: {
        // b = i (a + 2 pi P) with P a projection commuting with a.
        const ComplexMatrix u = random_unitary(cfg);
        const std::vector<Complex> d = real_spectrum(rng, n);
        std::vector<Complex> shifted = d;
        for (auto& z : shifted)
          if ((rng.next() >> 63) != 0) z += 2.0 * kPi;
        const ComplexMatrix a = hermitian_part(conjugate_diagonal(u, d));
        const ComplexMatrix b = scale(hermitian_part(conjugate_diagonal(u, shifted)), kI);
        return check_skew_conclusion(a, b, tol);
      }
      default:
        return check_skew_conclusion(ComplexMatrix(n), random_hermitian(with_box(cfg, kPositiveReal)), tol);
    }
  }
  throw UnknownCheck(std::string(name));
}

CheckReport counterexample_trial(std::string_view name, const GeneratorConfig& cfg, const SuiteOptions& options) {
  const Tolerances& tol = options.tolerances;
  Rng rng = suite_rng(cfg);
  const auto [canon_a, canon_b] = canonical_counterexample();
  if (name == "main_transfer") return check_main_transfer(gaussian_matrix(rng, 2), canon_a, tol, options.diagnostics);
  if (name == "selfadjoint_vs_normal")
    return check_selfadjoint_vs_normal(random_hermitian(with_box(cfg, kUnitReal)), canon_a, zero_to_pi(), tol);
  const auto [a, b] = lattice_counterexample(cfg);
  if (name == "square_commute") return check_square_commute(a, b, tol);
  return check_equal_exp_commute(a, b, tol);
}

}  // namespace

std::string_view to_string(InstanceFamily family) {
  return family == InstanceFamily::standard ? "standard" : "counterexample";
}

std::optional<InstanceFamily> parse_family(std::string_view text) {
  if (text == "standard") return InstanceFamily::standard;
  if (text == "counterexample") return InstanceFamily::counterexample;
  return std::nullopt;
}

std::span<const std::string_view> check_names() { return kCheckNames; }

bool is_check_name(std::string_view name) {
  return std::find(kCheckNames.begin(), kCheckNames.end(), name) != kCheckNames.end();
}

std::size_t check_arity(std::string_view name) {
  if (!is_check_name(name)) throw UnknownCheck(std::string(name));
  if (name == "exp_identity_selfadjoint" || name == "normality_via_exp" || name == "unitary_criterion") return 1;
  return 2;
}

CheckReport run_check(std::string_view name, std::span<const ComplexMatrix> m, const SuiteOptions& options) {
  const std::size_t arity = check_arity(name);
  if (m.size() != arity)
    throw Error("check " + std::string(name) + " expects " + std::to_string(arity) + " matrices, got " +
                std::to_string(m.size()));
  const Tolerances& tol = options.tolerances;
  if (name == "exp_identity_selfadjoint") return check_exp_identity_selfadjoint(m[0], tol);
  if (name == "normality_via_exp") return check_normality_via_exp(m[0], tol);
  if (name == "unitary_criterion") return check_unitary_criterion(m[0], tol);
  if (name == "fuglede") return check_fuglede(m[0], m[1], tol);
  if (name == "wermuth") return check_wermuth(m[0], m[1], tol);
  if (name == "selfadjoint_vs_normal") return check_selfadjoint_vs_normal(m[0], m[1], options.interval, tol);
  if (name == "two_normals") return check_two_normals(m[0], m[1], tol);
  if (name == "main_transfer") return check_main_transfer(m[0], m[1], tol, options.diagnostics);
  if (name == "sum_normal") return check_sum_normal(m[0], m[1], tol);
  if (name == "square_commute") return check_square_commute(m[0], m[1], tol);
  if (name == "equal_exp_commute") return check_equal_exp_commute(m[0], m[1], tol);
  if (name == "selfadjoint_injectivity") return check_selfadjoint_injectivity(m[0], m[1], tol);
  return check_skew_conclusion(m[0], m[1], tol);
}

std::vector<CheckReport> run_suite(std::string_view name, const GeneratorConfig& cfg, std::size_t trials,
                                   const SuiteOptions& options) {
  if (!is_check_name(name)) throw UnknownCheck(std::string(name));
  validate(cfg);
  require_counterexample_support(name, options);
  if (!(options.tolerances.commute > 0.0 && options.tolerances.commute < options.tolerances.refute))
    throw Error("tolerances must satisfy 0 < commute < refute");

  std::vector<CheckReport> reports;
  reports.reserve(trials);
  for (std::size_t k = 0; k < trials; ++k) {
    GeneratorConfig trial_cfg = split(cfg, k);
    if (options.family == InstanceFamily::counterexample) trial_cfg.dim = 2;
    CheckReport report = options.family == InstanceFamily::standard
                             ? standard_trial(name, trial_cfg, k, options)
                             : counterexample_trial(name, trial_cfg, options);
    report.instance_seed = trial_cfg;
    reports.push_back(std::move(report));
  }
  return reports;
}

}  // namespace opexp
