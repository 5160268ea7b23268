#include "opexp/json_io.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <limits>
#include <sstream>

#include "opexp/errors.hpp"

namespace opexp {
namespace {

double finite_number(const Json& j, const char* what) {
  if (!j.is_number()) throw ParseError(std::string(what) + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ParseError(std::string(what) + " must be finite");
  return v;
}

Json residuals_to_json(const ResidualMap& map) {
  Json out = Json::object();
  for (const auto& [name, value] : map) out[name] = value;
  return out;
}

ResidualMap residuals_from_json(const Json& j) {
  ResidualMap out;
  if (j.is_null()) return out;
  if (!j.is_object()) throw ParseError("residual map must be an object");
  for (const auto& [name, value] : j.items())
    out[name] = value.is_null() ? std::numeric_limits<double>::quiet_NaN() : value.get<double>();
  return out;
}

}  // namespace

Json matrix_to_json(const ComplexMatrix& m) {
  Json entries = Json::array();
  for (const Complex& z : m.entries()) entries.push_back(Json::array({z.real(), z.imag()}));
  return Json{{"dim", m.dim()}, {"entries", std::move(entries)}};
}

ComplexMatrix matrix_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("matrix document must be a JSON object");
  if (!j.contains("dim") || !j["dim"].is_number_integer()) throw ParseError("matrix needs an integer \"dim\"");
  const auto dim_signed = j["dim"].get<long long>();
  if (dim_signed < 1) throw ParseError("matrix \"dim\" must be at least 1");
  const auto dim = static_cast<std::size_t>(dim_signed);
  if (!j.contains("entries") || !j["entries"].is_array()) throw ParseError("matrix needs an \"entries\" array");
  const Json& entries = j["entries"];
  if (entries.size() != dim * dim)
    throw ParseError("expected " + std::to_string(dim * dim) + " entries, got " + std::to_string(entries.size()));
  std::vector<Complex> values;
  values.reserve(entries.size());
  for (const Json& e : entries) {
    if (!e.is_array() || e.size() != 2) throw ParseError("each entry must be a [re, im] pair");
    values.emplace_back(finite_number(e[0], "entry real part"), finite_number(e[1], "entry imaginary part"));
  }
  return ComplexMatrix(dim, std::move(values));
}

ComplexMatrix read_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  return matrix_from_json(j);
}

void write_matrix_file(const std::filesystem::path& path, const ComplexMatrix& m) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << dump(matrix_to_json(m)) << '\n';
}

Json config_to_json(const GeneratorConfig& cfg) {
  Json j{{"seed", cfg.seed}, {"dim", cfg.dim}, {"norm_cap", cfg.norm_cap}};
  if (cfg.spectrum_box) {
    const SpectrumBox& b = *cfg.spectrum_box;
    j["spectrum_box"] = Json::array({b.re_lo, b.re_hi, b.im_lo, b.im_hi});
  } else {
    j["spectrum_box"] = nullptr;
  }
  return j;
}

GeneratorConfig config_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("generator config must be an object");
  GeneratorConfig cfg;
  try {
    cfg.seed = j.at("seed").get<std::uint64_t>();
    cfg.dim = j.at("dim").get<std::size_t>();
    cfg.norm_cap = finite_number(j.at("norm_cap"), "norm_cap");
    const Json& box = j.at("spectrum_box");
    if (!box.is_null()) {
      if (!box.is_array() || box.size() != 4) throw ParseError("spectrum_box must be [re_lo, re_hi, im_lo, im_hi]");
      cfg.spectrum_box = SpectrumBox{finite_number(box[0], "re_lo"), finite_number(box[1], "re_hi"),
                                     finite_number(box[2], "im_lo"), finite_number(box[3], "im_hi")};
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("generator config: ") + e.what());
  }
  return cfg;
}

Json certificate_to_json(const IntervalCertificate& cert) {
  return Json{{"lo", cert.lo},           {"hi", cert.hi},         {"min_eig", cert.min_eig},
              {"max_eig", cert.max_eig}, {"margin", cert.margin}, {"holds", cert.holds}};
}

Json report_to_json(const CheckReport& report) {
  return Json{
      {"check", report.check_name},
      {"dim", report.dim},
      {"config", report.instance_seed ? config_to_json(*report.instance_seed) : Json(nullptr)},
      {"hypotheses", residuals_to_json(report.hypothesis_residuals)},
      {"conclusions", residuals_to_json(report.conclusion_residuals)},
      {"diagnostics", residuals_to_json(report.diagnostics)},
      {"verdict", std::string(to_string(report.verdict))},
      {"tolerances", {{"commute", report.tolerances.commute}, {"refute", report.tolerances.refute}}},
  };
}

CheckReport report_from_json(const Json& j) {
  CheckReport report;
  try {
    report.check_name = j.at("check").get<std::string>();
    report.dim = j.at("dim").get<std::size_t>();
    if (!j.at("config").is_null()) report.instance_seed = config_from_json(j.at("config"));
    report.hypothesis_residuals = residuals_from_json(j.at("hypotheses"));
    report.conclusion_residuals = residuals_from_json(j.at("conclusions"));
    if (j.contains("diagnostics")) report.diagnostics = residuals_from_json(j.at("diagnostics"));
    const auto verdict = parse_verdict(j.at("verdict").get<std::string>());
    if (!verdict) throw ParseError("unknown verdict " + j.at("verdict").dump());
    report.verdict = *verdict;
    report.tolerances.commute = j.at("tolerances").at("commute").get<double>();
    report.tolerances.refute = j.at("tolerances").at("refute").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("check report: ") + e.what());
  }
  return report;
}

Json manifest_to_json(const RunManifest& manifest) {
  if (!manifest_valid(manifest)) throw Error("run manifest summary does not match its reports");
  Json reports = Json::array();
  for (const CheckReport& r : manifest.reports) reports.push_back(report_to_json(r));
  Json summary = Json::object();
  for (Verdict v : {Verdict::confirmed, Verdict::refuted, Verdict::hypothesis_not_met, Verdict::indeterminate}) {
    const auto it = manifest.summary.find(v);
    summary[std::string(to_string(v))] = it == manifest.summary.end() ? 0 : it->second;
  }
  return Json{
      {"tool_version", manifest.tool_version},
      {"command_line", manifest.command_line},
      {"started_at", manifest.started_at ? Json(*manifest.started_at) : Json(nullptr)},
      {"reports", std::move(reports)},
      {"summary", std::move(summary)},
  };
}

std::string dump(const Json& j) { return j.dump(2); }

std::map<Verdict, std::size_t> tally(const std::vector<CheckReport>& reports) {
  std::map<Verdict, std::size_t> counts{
      {Verdict::confirmed, 0}, {Verdict::refuted, 0}, {Verdict::hypothesis_not_met, 0}, {Verdict::indeterminate, 0}};
  for (const CheckReport& r : reports) ++counts[r.verdict];
  return counts;
}

RunManifest make_manifest(std::string command_line, std::optional<std::string> started_at,
                          std::vector<CheckReport> reports) {
  RunManifest m{kToolVersion, std::move(command_line), std::move(started_at), std::move(reports), {}};
  m.summary = tally(m.reports);
  return m;
}

bool manifest_valid(const RunManifest& manifest) {
  auto expected = tally(manifest.reports);
  auto actual = manifest.summary;
  for (auto& [verdict, count] : expected) actual.try_emplace(verdict, 0);
  if (actual != expected) return false;
  for (const CheckReport& r : manifest.reports)
    if (!verdict_consistent(r)) return false;
  return true;
}

std::string utc_timestamp_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace opexp
