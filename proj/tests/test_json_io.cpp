#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>

#include "doctest.h"
#include "opexp/errors.hpp"
#include "opexp/json_io.hpp"
#include "opexp/manifest.hpp"
#include "opexp/rng.hpp"
#include "opexp/suite.hpp"
#include "opexp/theorem_lab.hpp"

using namespace opexp;

namespace {

std::filesystem::path temp_file(const char* name) {
  return std::filesystem::temp_directory_path() / (std::string("opexp_test_") + name);
}

}  // namespace

TEST_CASE("matrix JSON layout") {
  const ComplexMatrix m{{Complex(1, 2), 3.0}, {0.0, Complex(0, -1)}};
  const Json j = matrix_to_json(m);
  CHECK(j["dim"] == 2);
  CHECK(j["entries"].size() == 4);
  CHECK(j["entries"][0][0] == 1.0);
  CHECK(j["entries"][0][1] == 2.0);
  CHECK(j["entries"][3][1] == -1.0);
}

TEST_CASE("matrix round trip is bitwise") {
  Rng rng(1, 0);
  for (int k = 0; k < 20; ++k) {
    ComplexMatrix m(1 + k % 5);
    for (std::size_t i = 0; i < m.dim(); ++i)
      for (std::size_t j = 0; j < m.dim(); ++j)
        m(i, j) = Complex(rng.normal() * std::pow(10.0, rng.uniform(-300, 300)), rng.uniform() / 3.0);
    CHECK(matrix_from_json(Json::parse(dump(matrix_to_json(m)))) == m);
    const auto path = temp_file("roundtrip.json");
    write_matrix_file(path, m);
    CHECK(read_matrix_file(path) == m);
    std::filesystem::remove(path);
  }
  const ComplexMatrix pi{{std::numbers::pi}};
  CHECK(dump(matrix_to_json(pi)).find("3.141592653589793") != std::string::npos);
}

TEST_CASE("malformed matrices are rejected") {
  CHECK_THROWS_AS(matrix_from_json(Json::parse(R"({"dim": 2, "entries": [[1,0]]})")), ParseError);
  CHECK_THROWS_AS(matrix_from_json(Json::parse(R"({"entries": [[1,0]]})")), ParseError);
  CHECK_THROWS_AS(matrix_from_json(Json::parse(R"({"dim": 0, "entries": []})")), ParseError);
  CHECK_THROWS_AS(matrix_from_json(Json::parse(R"({"dim": 1, "entries": [[1]]})")), ParseError);
  CHECK_THROWS_AS(matrix_from_json(Json::parse(R"({"dim": 1, "entries": [["a", 0]]})")), ParseError);
  CHECK_THROWS_AS(matrix_from_json(Json::parse(R"([1, 2])")), ParseError);
  Json nan_doc{{"dim", 1}, {"entries", Json::array({Json::array({std::nan(""), 0.0})})}};
  CHECK_THROWS_AS(matrix_from_json(nan_doc), ParseError);

  const auto path = temp_file("garbage.json");
  std::ofstream(path) << "{not json";
  CHECK_THROWS_AS(read_matrix_file(path), ParseError);
  // Overflowing literals must not turn into infinities.
  std::ofstream(path) << R"({"dim": 1, "entries": [[1e999, 0]]})";
  CHECK_THROWS_AS(read_matrix_file(path), ParseError);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(read_matrix_file(temp_file("missing.json")), ParseError);
}

TEST_CASE("example data files hold the canonical pair") {
  const auto [a, b] = canonical_counterexample();
  CHECK(read_matrix_file(OPEXP_DATA_DIR "/example_a.json") == a);
  CHECK(read_matrix_file(OPEXP_DATA_DIR "/example_b.json") == b);
}

TEST_CASE("config JSON round trip") {
  GeneratorConfig cfg;
  cfg.seed = 0xFFFFFFFFFFFFFFFFULL;
  cfg.dim = 5;
  cfg.norm_cap = 2.5;
  cfg.spectrum_box = SpectrumBox{-1.0, 1.0, 0.1, std::numbers::pi - 0.1};
  CHECK(config_from_json(Json::parse(dump(config_to_json(cfg)))) == cfg);
  cfg.spectrum_box.reset();
  const Json j = config_to_json(cfg);
  CHECK(j["spectrum_box"].is_null());
  CHECK(config_from_json(j) == cfg);
}

TEST_CASE("report JSON schema and round trip") {
  GeneratorConfig cfg;
  cfg.seed = 7;
  cfg.dim = 3;
  for (const auto name : check_names()) {
    const CheckReport r = run_suite(name, cfg, 1).front();
    const Json j = report_to_json(r);
    for (const char* key : {"check", "dim", "config", "hypotheses", "conclusions", "verdict", "tolerances"})
      CHECK(j.contains(key));
    CHECK(j["tolerances"].contains("commute"));
    CHECK(j["tolerances"].contains("refute"));
    const CheckReport back = report_from_json(Json::parse(dump(j)));
    CHECK(back.check_name == r.check_name);
    CHECK(back.hypothesis_residuals == r.hypothesis_residuals);
    CHECK(back.conclusion_residuals == r.conclusion_residuals);
    CHECK(back.diagnostics == r.diagnostics);
    CHECK(back.verdict == r.verdict);
    CHECK(back.instance_seed == r.instance_seed);
    CHECK(back.tolerances == r.tolerances);
  }
}

TEST_CASE("manifest summary is validated") {
  const auto [a, b] = canonical_counterexample();
  std::vector<CheckReport> reports{check_equal_exp_commute(a, b), check_exp_identity_selfadjoint(ComplexMatrix(2))};
  RunManifest m = make_manifest("opexp test", std::nullopt, reports);
  CHECK(manifest_valid(m));
  CHECK(m.summary.at(Verdict::hypothesis_not_met) == 1);
  CHECK(m.summary.at(Verdict::confirmed) == 1);
  const Json j = manifest_to_json(m);
  CHECK(j["started_at"].is_null());
  CHECK(j["summary"]["refuted"] == 0);
  CHECK(j["tool_version"] == kToolVersion);

  m.summary[Verdict::refuted] = 3;
  CHECK_FALSE(manifest_valid(m));
  CHECK_THROWS_AS(manifest_to_json(m), Error);

  RunManifest tampered = make_manifest("x", std::nullopt, reports);
  tampered.reports[0].verdict = Verdict::confirmed;
  tampered.summary = tally(tampered.reports);
  CHECK_FALSE(manifest_valid(tampered));

  const std::string stamp = utc_timestamp_now();
  CHECK(stamp.size() == 20);
  CHECK(stamp.back() == 'Z');
}
