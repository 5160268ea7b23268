#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "opexp/generators.hpp"
#include "opexp/theorem_lab.hpp"

namespace opexp {

/// Which instances a suite draws.
///  standard:       constructed instances for the check (positive controls
///                  plus negative-direction cases where the check has them).
///  counterexample: instances built around the canonical 2x2 pair, where the
///                  spectral hypothesis fails (only for main_transfer,
///                  selfadjoint_vs_normal, square_commute, equal_exp_commute).
enum class InstanceFamily { standard, counterexample };

std::string_view to_string(InstanceFamily family);
std::optional<InstanceFamily> parse_family(std::string_view text);

struct SuiteOptions {
  Tolerances tolerances;
  InstanceFamily family = InstanceFamily::standard;
  bool diagnostics = false;
  /// Used by selfadjoint_vs_normal only.
  Interval interval = zero_to_pi();
};

/// The fixed set of check names, in declaration order.
std::span<const std::string_view> check_names();
bool is_check_name(std::string_view name);

/// Number of matrices the check consumes (1 or 2). Throws UnknownCheck.
std::size_t check_arity(std::string_view name);

/// Runs one check on explicit matrices. Throws UnknownCheck, or Error on an
/// arity mismatch.
CheckReport run_check(std::string_view name, std::span<const ComplexMatrix> matrices,
                      const SuiteOptions& options = {});

/// `trials` independent instances, trial k drawn from split(cfg, k). The
/// result is ordered by trial index and fully determined by the arguments.
std::vector<CheckReport> run_suite(std::string_view name, const GeneratorConfig& cfg, std::size_t trials,
                                   const SuiteOptions& options = {});

}  // namespace opexp
