#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "opexp/cli.hpp"
#include "opexp/generators.hpp"
#include "opexp/json_io.hpp"

using namespace opexp;

namespace {

constexpr double kPi = std::numbers::pi;
const std::string kDataA = OPEXP_DATA_DIR "/example_a.json";
const std::string kDataB = OPEXP_DATA_DIR "/example_b.json";

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const char* name, const ComplexMatrix& m) {
  const auto path = std::filesystem::temp_directory_path() / (std::string("opexp_cli_") + name);
  write_matrix_file(path, m);
  return path.string();
}

std::string write_temp_text(const char* name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / (std::string("opexp_cli_") + name);
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace

TEST_CASE("parse_real accepts numbers and multiples of pi") {
  CHECK(cli::parse_real("0.25") == 0.25);
  CHECK(cli::parse_real("-3") == -3.0);
  CHECK(cli::parse_real("pi") == kPi);
  CHECK(cli::parse_real("π") == kPi);
  CHECK(cli::parse_real("-pi/2") == -kPi / 2);
  CHECK(cli::parse_real("2pi") == 2 * kPi);
  CHECK(cli::parse_real("3*pi/4") == 3 * kPi / 4);
  for (const char* bad : {"", "abc", "pi/0", "2*", "pi2", "1.0x", "inf", "nan"}) CHECK_FALSE(cli::parse_real(bad));
}

TEST_CASE("expm command") {
  const Run zero = run({"expm", write_temp("zero.json", ComplexMatrix(3))});
  CHECK(zero.code == 0);
  CHECK(matrix_from_json(Json::parse(zero.out)) == ComplexMatrix::identity(3));

  const Run a = run({"expm", kDataA});
  CHECK(a.code == 0);
  const ComplexMatrix ea = matrix_from_json(Json::parse(a.out));
  CHECK(frobenius_norm(add(ea, ComplexMatrix::identity(2))) <= 1e-12);

  GeneratorConfig cfg;
  cfg.seed = 3;
  cfg.dim = 5;
  cfg.spectrum_box = SpectrumBox{-2, 2, -2, 2};
  const Run oracle = run({"expm", write_temp("normal.json", random_normal_constrained(cfg)), "--oracle"});
  CHECK(oracle.code == 0);
  const Json j = Json::parse(oracle.out);
  CHECK(j["oracle"]["disagreement"].get<double>() <= 1e-10);
  CHECK(j["oracle"]["spectral_path"]["dim"] == 5);

  CHECK(run({"expm", kDataB, "--oracle"}).code == 4);
  CHECK(run({"expm", write_temp_text("bad.json", "{\"dim\": 2}")}).code == 2);
  CHECK(run({"expm", "/nonexistent/file.json"}).code == 2);
  CHECK(run({"expm", write_temp("huge.json", scale(ComplexMatrix::identity(2), 800.0))}).code == 3);
}

TEST_CASE("expm --out writes a file that re-parses bitwise") {
  const auto out = (std::filesystem::temp_directory_path() / "opexp_cli_out.json").string();
  const Run r = run({"expm", kDataB, "--out", out});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  const ComplexMatrix written = read_matrix_file(out);
  const Run again = run({"expm", kDataB});
  CHECK(matrix_from_json(Json::parse(again.out)) == written);
}

TEST_CASE("spectrum command") {
  const Run a = run({"spectrum", kDataA, "--imag-part", "--interval", "0", "pi", "--json"});
  CHECK(a.code == 0);
  const Json j = Json::parse(a.out);
  CHECK(j["certificate"]["holds"] == false);
  CHECK(j["eigenvalues"][0][0].get<double>() == doctest::Approx(-kPi));
  CHECK(j["eigenvalues"][1][0].get<double>() == doctest::Approx(kPi));

  const Run id = run({"spectrum", write_temp("id.json", ComplexMatrix::identity(2)), "--interval", "0", "2", "--json"});
  CHECK(id.code == 0);
  CHECK(Json::parse(id.out)["certificate"]["holds"] == true);

  const Run sym = run({"spectrum", write_temp("zero2.json", ComplexMatrix(2)), "--interval", "-pi/2", "pi/2"});
  CHECK(sym.code == 0);
  CHECK(sym.out.find("holds") != std::string::npos);

  const Run d = run({"spectrum", write_temp("ipi2.json", ComplexMatrix{{Complex(0, kPi / 2)}}), "--json"});
  CHECK(Json::parse(d.out)["eigenvalues"][0][1].get<double>() == kPi / 2);

  const std::string jordan = write_temp("jordan.json", ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}});
  CHECK(run({"spectrum", jordan}).code == 4);
  CHECK(run({"spectrum", jordan, "--imag-part"}).code == 0);
  // Normal but not Hermitian: no certificate without --imag-part.
  CHECK(run({"spectrum", kDataA, "--interval", "0", "pi"}).code == 4);
  CHECK(run({"spectrum", kDataA, "--interval", "0", "banana"}).code == 2);
}

TEST_CASE("check command") {
  const Run transfer = run({"check", "main_transfer", "--generate", "--seed", "7", "--dim", "4", "--trials", "100",
                            "--json", "--no-timestamp"});
  CHECK(transfer.code == 0);
  const Json m = Json::parse(transfer.out);
  CHECK(m["reports"].size() == 100);
  CHECK(m["summary"]["refuted"] == 0);
  CHECK(m["started_at"].is_null());
  CHECK(m["command_line"].get<std::string>().rfind("opexp check main_transfer", 0) == 0);

  const Run pair = run({"check", "equal_exp_commute", kDataA, kDataB, "--json"});
  CHECK(pair.code == 0);
  const Json p = Json::parse(pair.out);
  CHECK(p["reports"][0]["verdict"] == "hypothesis_not_met");
  CHECK(p["started_at"].is_string());

  const Run zero = run({"check", "exp_identity_selfadjoint", write_temp("zero1.json", ComplexMatrix(2)), "--json"});
  CHECK(Json::parse(zero.out)["reports"][0]["verdict"] == "confirmed");

  const Run text = run({"check", "fuglede", "--generate", "--trials", "3"});
  CHECK(text.code == 0);
  CHECK(text.out.find("summary:") != std::string::npos);
  CHECK(text.out.find("\"reports\"") == std::string::npos);

  const Run cex = run({"check", "equal_exp_commute", "--generate", "--family", "counterexample", "--seed", "7",
                       "--trials", "100", "--json"});
  CHECK(cex.code == 0);
  CHECK(Json::parse(cex.out)["summary"]["hypothesis_not_met"].get<int>() >= 95);

  const Run symmetric = run({"check", "selfadjoint_vs_normal", "--generate", "--interval", "-pi/2", "pi/2",
                             "--trials", "6", "--json"});
  CHECK(symmetric.code == 0);
  CHECK(Json::parse(symmetric.out)["summary"]["confirmed"] == 6);

  const Run diag = run({"check", "main_transfer", "--generate", "--trials", "2", "--diagnostics", "--json"});
  CHECK(Json::parse(diag.out)["reports"][0]["diagnostics"].contains("re_a_commutes_exp_n"));
}

TEST_CASE("check exits 1 exactly when a verdict is refuted") {
  // With absurdly tight tolerances, roundoff in the exponential identity reads
  // as nonzero while the normality residual of a Hermitian matrix is exactly 0.
  GeneratorConfig cfg;
  cfg.seed = 5;
  cfg.dim = 4;
  cfg.spectrum_box = SpectrumBox{-1, 1, 0, 0};
  const std::string h = write_temp("herm.json", random_hermitian(cfg));
  const Run r = run({"check", "normality_via_exp", h, "--tol-commute", "1e-300", "--tol-refute", "1e-299", "--json"});
  CHECK(Json::parse(r.out)["reports"][0]["verdict"] == "refuted");
  CHECK(r.code == 1);
  CHECK(run({"check", "normality_via_exp", h}).code == 0);
}

TEST_CASE("check rejects bad input with exit 2") {
  CHECK(run({"check", "no_such_check", "--generate"}).code == 2);
  CHECK(run({"check", "main_transfer", kDataA}).code == 2);
  CHECK(run({"check", "main_transfer", "--generate", "--dim", "0"}).code == 2);
  CHECK(run({"check", "main_transfer", "--generate", "--tol-commute", "1e-3", "--tol-refute", "1e-6"}).code == 2);
  CHECK(run({"check", "main_transfer", "--generate", "--box", "1", "0", "0", "1"}).code == 2);
  CHECK(run({"check", "main_transfer", "--generate", "--seed", "abc"}).code == 2);
  CHECK(run({"check", "fuglede", "--generate", "--family", "counterexample"}).code == 2);
  CHECK(run({"check", "main_transfer", "--generate", "--bogus"}).code == 2);
  CHECK(run({"check", "main_transfer", kDataA, kDataB, "--generate"}).code == 2);
  CHECK(run({}).code == 2);
}

TEST_CASE("OPEXP_DEFAULT_SEED applies only without --seed") {
  const std::vector<std::string> base{"check", "fuglede", "--generate", "--trials", "2", "--json", "--no-timestamp"};
  auto seed_of = [](const Run& r) { return Json::parse(r.out)["reports"][0]["config"]["seed"].get<std::uint64_t>(); };
  ::unsetenv("OPEXP_DEFAULT_SEED");
  const auto default_seed = seed_of(run(base));
  ::setenv("OPEXP_DEFAULT_SEED", "1234", 1);
  const auto env_seed = seed_of(run(base));
  CHECK(env_seed != default_seed);
  std::vector<std::string> explicit_args = base;
  explicit_args.insert(explicit_args.end(), {"--seed", "1234"});
  CHECK(seed_of(run(explicit_args)) == env_seed);
  explicit_args.back() = "0";
  CHECK(seed_of(run(explicit_args)) == default_seed);
  ::setenv("OPEXP_DEFAULT_SEED", "not-a-number", 1);
  CHECK(run(base).code == 2);
  ::unsetenv("OPEXP_DEFAULT_SEED");
}

TEST_CASE("canonical example command") {
  const Run text = run({"paper-example"});
  CHECK(text.code == 0);
  CHECK(text.out.find("example reproduced") != std::string::npos);
  CHECK(text.out.find("\"reports\"") == std::string::npos);

  const Run j = run({"paper-example", "--json", "--no-timestamp"});
  CHECK(j.code == 0);
  const Json m = Json::parse(j.out);
  CHECK(m["reports"].size() == 2);
  CHECK(m["reports"][0]["check"] == "main_transfer");
  CHECK(m["reports"][0]["verdict"] == "hypothesis_not_met");
  CHECK(m["reports"][1]["check"] == "equal_exp_commute");
  CHECK(m["reports"][1]["verdict"] == "hypothesis_not_met");
  CHECK(m["summary"]["hypothesis_not_met"] == 2);
  CHECK(run({"paper-example", "--json", "--no-timestamp"}).out == j.out);
}

TEST_CASE("version and help") {
  const Run v = run({"--version"});
  CHECK(v.code == 0);
  CHECK(v.out.find("0.1.0") != std::string::npos);
  const Run h = run({"--help"});
  CHECK(h.code == 0);
  CHECK(h.out.find("paper-example") != std::string::npos);
}
