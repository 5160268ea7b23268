#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace opexp::cli {

enum ExitCode : int {
  kOk = 0,
  kRefutedOrViolation = 1,
  kBadInput = 2,
  kOverflow = 3,
  kNotNormal = 4,
};

/// Entry point behind the `opexp` binary. `args` excludes the program name.
/// Machine-readable output goes to `out` only with --json; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses a real number or a multiple/fraction of pi: "1.5", "pi", "-pi/2",
/// "2pi", "3*pi/4", "π".
std::optional<double> parse_real(std::string_view text);

}  // namespace opexp::cli
