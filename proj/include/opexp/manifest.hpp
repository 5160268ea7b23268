#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "opexp/theorem_lab.hpp"

namespace opexp {

/// One CLI run: what was executed and every report it produced.
struct RunManifest {
  std::string tool_version;
  std::string command_line;
  /// ISO-8601 UTC; absent when timestamps are disabled.
  std::optional<std::string> started_at;
  std::vector<CheckReport> reports;
  std::map<Verdict, std::size_t> summary;
};

inline constexpr const char* kToolVersion = "0.1.0";

std::map<Verdict, std::size_t> tally(const std::vector<CheckReport>& reports);

/// Builds a manifest whose summary is the tally of `reports`.
RunManifest make_manifest(std::string command_line, std::optional<std::string> started_at,
                          std::vector<CheckReport> reports);

/// Summary equals the tally and every report verdict is consistent.
bool manifest_valid(const RunManifest& manifest);

std::string utc_timestamp_now();

}  // namespace opexp
