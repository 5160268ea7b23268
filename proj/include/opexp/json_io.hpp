#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"
#include "opexp/generators.hpp"
#include "opexp/manifest.hpp"
#include "opexp/matrix.hpp"
#include "opexp/spectral.hpp"
#include "opexp/theorem_lab.hpp"

namespace opexp {

using Json = nlohmann::json;

/// {"dim": n, "entries": [[re, im], ...]} with row-major entries.
Json matrix_to_json(const ComplexMatrix& m);
/// Throws ParseError on a malformed document or non-finite values.
ComplexMatrix matrix_from_json(const Json& j);

ComplexMatrix read_matrix_file(const std::filesystem::path& path);
void write_matrix_file(const std::filesystem::path& path, const ComplexMatrix& m);

Json config_to_json(const GeneratorConfig& cfg);
GeneratorConfig config_from_json(const Json& j);

Json certificate_to_json(const IntervalCertificate& cert);

Json report_to_json(const CheckReport& report);
CheckReport report_from_json(const Json& j);

/// Throws Error when the summary does not match the reports.
Json manifest_to_json(const RunManifest& manifest);

/// Serialized form used for every file and stdout emission.
std::string dump(const Json& j);

}  // namespace opexp
