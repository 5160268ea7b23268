#include "opexp/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "opexp/errors.hpp"
#include "opexp/expm.hpp"
#include "opexp/json_io.hpp"
#include "opexp/manifest.hpp"
#include "opexp/spectral.hpp"
#include "opexp/suite.hpp"

namespace opexp::cli {
namespace {

constexpr double kPi = std::numbers::pi;

struct UsageError : Error {
  using Error::Error;
};

std::optional<double> parse_plain(std::string_view text) {
  if (text.empty()) return std::nullopt;
  const std::string s(text);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::string join(const std::vector<std::string>& args) {
  std::string line = "opexp";
  for (const auto& a : args) line += " " + a;
  return line;
}

std::string fmt(double v, int precision = 12) {
  std::ostringstream os;
  os << std::setprecision(precision) << v;
  return os.str();
}

std::string fmt(Complex z) {
  std::ostringstream os;
  os << std::setprecision(12) << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  return os.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw Error("cannot write " + path);
  f << text << '\n';
}

// Output routing shared by the subcommands.
struct Output {
  std::string out_path;
  bool json = false;
  bool no_timestamp = false;
};

void emit_json(const Output& o, const Json& j, std::ostream& out) {
  if (!o.out_path.empty()) write_text(o.out_path, dump(j));
  if (o.json) out << dump(j) << '\n';
}

// "--interval LO HI" values may be symbolic ("-pi/2"), which CLI11 would take
// for short options; they are evaluated to plain numbers up front.
std::vector<std::string> normalize_interval_args(std::vector<std::string> args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] != "--interval") continue;
    for (std::size_t k = 1; k <= 2; ++k) {
      if (i + k >= args.size()) throw UsageError("--interval needs two values");
      const auto v = parse_real(args[i + k]);
      if (!v) throw UsageError("invalid --interval value: " + args[i + k]);
      std::ostringstream os;
      os << std::setprecision(17) << *v;
      args[i + k] = os.str();
    }
    i += 2;
  }
  return args;
}

int cmd_expm(const std::string& input, bool oracle, const Output& o, std::ostream& out) {
  const ComplexMatrix m = read_matrix_file(input);
  const ExpResult result = expm(m);
  Json j = matrix_to_json(result.value);
  j["method"] = std::string(to_string(result.method));
  j["est_error"] = result.est_error;
  if (oracle) {
    const ExpResult spectral = expm_normal(m);
    j["oracle"] = Json{{"spectral_path", matrix_to_json(spectral.value)},
                       {"disagreement", relative_distance(result.value, spectral.value)}};
  }
  if (o.out_path.empty()) {
    out << dump(j) << '\n';
  } else {
    write_text(o.out_path, dump(j));
  }
  return kOk;
}

int cmd_spectrum(const std::string& input, bool imag_part, const std::vector<double>& interval, const Output& o,
                 std::ostream& out, std::ostream& err) {
  const ComplexMatrix m = read_matrix_file(input);
  std::vector<Complex> eigenvalues;
  std::optional<ComplexMatrix> hermitian;
  if (imag_part) {
    hermitian = cartesian(m).imag_part;
    eigenvalues = eig_hermitian(*hermitian).eigenvalues;
  } else {
    const double residual = normality_residual(m);
    if (residual > kNormalInputTolerance) {
      err << "opexp: matrix is not normal (residual " << residual << "); use --imag-part\n";
      return kNotNormal;
    }
    eigenvalues = eig_normal(m).eigenvalues;
    if (hermitian_residual(m) <= kHermitianInputTolerance) hermitian = m;
  }

  Json j{{"eigenvalues", Json::array()}};
  for (const Complex& z : eigenvalues) j["eigenvalues"].push_back(Json::array({z.real(), z.imag()}));
  std::optional<IntervalCertificate> cert;
  if (!interval.empty()) {
    if (!hermitian) {
      err << "opexp: --interval needs a Hermitian matrix (or --imag-part)\n";
      return kNotNormal;
    }
    cert = certify_interval(*hermitian, interval[0], interval[1]);
    j["certificate"] = certificate_to_json(*cert);
  }

  if (!o.json) {
    out << (imag_part ? "spectrum of Im T:\n" : "spectrum:\n");
    for (const Complex& z : eigenvalues) out << "  " << fmt(z) << '\n';
    if (cert) {
      out << "interval (" << fmt(cert->lo) << ", " << fmt(cert->hi) << "), margin " << fmt(cert->margin) << ": "
          << (cert->holds ? "holds" : "fails") << " (min " << fmt(cert->min_eig) << ", max " << fmt(cert->max_eig)
          << ")\n";
    }
  }
  emit_json(o, j, out);
  return kOk;
}

struct CheckArgs {
  std::string name;
  std::vector<std::string> files;
  bool generate = false;
  std::optional<std::uint64_t> seed;
  std::size_t dim = 4;
  std::size_t trials = 10;
  std::vector<double> box;
  double norm_cap = 10.0;
  std::string family = "standard";
  double tol_commute = Tolerances{}.commute;
  double tol_refute = Tolerances{}.refute;
  std::vector<double> interval;
  bool diagnostics = false;
};

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("OPEXP_DEFAULT_SEED")) {
    const std::string text(env);
    std::uint64_t value = 0;
    std::istringstream is(text);
    if (!(is >> value) || !is.eof()) throw UsageError("OPEXP_DEFAULT_SEED is not an unsigned integer: " + text);
    return value;
  }
  return 0;
}

void print_reports(const std::vector<CheckReport>& reports, std::ostream& out) {
  for (std::size_t k = 0; k < reports.size(); ++k) {
    const CheckReport& r = reports[k];
    out << "[" << k << "] " << r.check_name << " dim=" << r.dim << ": " << to_string(r.verdict) << '\n';
  }
  const auto counts = tally(reports);
  out << "summary:";
  for (const auto& [verdict, count] : counts) out << ' ' << to_string(verdict) << '=' << count;
  out << '\n';
}

int finish_manifest(const RunManifest& manifest, const Output& o, std::ostream& out) {
  if (!o.json) print_reports(manifest.reports, out);
  emit_json(o, manifest_to_json(manifest), out);
  return manifest.summary.at(Verdict::refuted) == 0 ? kOk : kRefutedOrViolation;
}

int cmd_check(const CheckArgs& a, const Output& o, const std::string& command_line, std::ostream& out) {
  if (!is_check_name(a.name)) throw UsageError("unknown check: " + a.name);
  SuiteOptions options;
  options.tolerances = {a.tol_commute, a.tol_refute};
  if (!(options.tolerances.commute > 0.0 && options.tolerances.commute < options.tolerances.refute))
    throw UsageError("tolerances must satisfy 0 < --tol-commute < --tol-refute");
  options.diagnostics = a.diagnostics;
  if (!a.interval.empty()) options.interval = {a.interval[0], a.interval[1]};
  const auto family = parse_family(a.family);
  if (!family) throw UsageError("unknown --family: " + a.family);
  options.family = *family;

  std::vector<CheckReport> reports;
  if (a.generate) {
    if (!a.files.empty()) throw UsageError("--generate and matrix files are mutually exclusive");
    GeneratorConfig cfg;
    cfg.seed = resolve_seed(a.seed);
    cfg.dim = a.dim;
    cfg.norm_cap = a.norm_cap;
    if (!a.box.empty()) cfg.spectrum_box = SpectrumBox{a.box[0], a.box[1], a.box[2], a.box[3]};
    try {
      validate(cfg);
    } catch (const GeneratorError& e) {
      throw UsageError(e.what());
    }
    reports = run_suite(a.name, cfg, a.trials, options);
  } else {
    if (a.files.size() != check_arity(a.name))
      throw UsageError("check " + a.name + " expects " + std::to_string(check_arity(a.name)) +
                       " matrix files (or --generate)");
    std::vector<ComplexMatrix> matrices;
    for (const auto& f : a.files) matrices.push_back(read_matrix_file(f));
    reports.push_back(run_check(a.name, matrices, options));
  }
  const RunManifest manifest =
      make_manifest(command_line, o.no_timestamp ? std::nullopt : std::optional(utc_timestamp_now()), reports);
  return finish_manifest(manifest, o, out);
}

int cmd_canonical_example(const Output& o, const std::string& command_line, std::ostream& out) {
  const auto [a, b] = canonical_counterexample();
  const ComplexMatrix minus_id = scale(ComplexMatrix::identity(2), -1.0);
  const double exp_a_err = frobenius_norm(sub(expm(a).value, minus_id));
  const double exp_b_err = frobenius_norm(sub(expm(b).value, minus_id));
  const ComplexMatrix im_a = cartesian(a).imag_part;
  const auto im_spec = eig_hermitian(im_a).eigenvalues;
  const double spec_err = std::max(std::abs(im_spec[0].real() + kPi), std::abs(im_spec[1].real() - kPi));
  const IntervalCertificate cert = certify_interval(im_a, 0.0, kPi);
  const double comm_norm = frobenius_norm(commutator(a, b));
  const double comm_expected = std::sqrt(10.0) * kPi * kPi;

  // Necessity of the spectral hypothesis: n = A with a = B, and e^A = e^B.
  const CheckReport transfer = check_main_transfer(b, a, {}, true);
  const CheckReport equal_exp = check_equal_exp_commute(a, b);

  const bool ok = exp_a_err <= 1e-12 && exp_b_err <= 1e-12 && spec_err <= 1e-12 &&
                  std::abs(comm_norm - comm_expected) <= 1e-9 && !cert.holds &&
                  transfer.verdict == Verdict::hypothesis_not_met &&
                  equal_exp.verdict == Verdict::hypothesis_not_met;

  if (!o.json) {
    out << "A = [[0, pi], [-pi, 0]],  B = [[pi, -2pi], [pi, -pi]]\n"
        << "||exp(A) + I||_F = " << fmt(exp_a_err, 3) << '\n'
        << "||exp(B) + I||_F = " << fmt(exp_b_err, 3) << '\n'
        << "spectrum of Im A = {" << fmt(im_spec[0].real(), 17) << ", " << fmt(im_spec[1].real(), 17) << "}\n"
        << "Im A spectrum inside (0, pi): " << (cert.holds ? "yes" : "no") << '\n'
        << "||AB - BA||_F = " << fmt(comm_norm, 17) << " (sqrt(10) pi^2 = " << fmt(comm_expected, 17) << ")\n"
        << "a = B, n = A: ||a e^n - e^n a|| (relative) = " << fmt(transfer.diagnostics.at("a_commutes_exp_n"), 3)
        << ", comm_residual(a, n) = " << fmt(transfer.diagnostics.at("a_commutes_n"), 6) << '\n'
        << "main_transfer: " << to_string(transfer.verdict) << '\n'
        << "equal_exp_commute: " << to_string(equal_exp.verdict) << '\n'
        << (ok ? "example reproduced\n" : "example NOT reproduced\n");
  }
  const RunManifest manifest = make_manifest(
      command_line, o.no_timestamp ? std::nullopt : std::optional(utc_timestamp_now()), {transfer, equal_exp});
  emit_json(o, manifest_to_json(manifest), out);
  return ok ? kOk : kRefutedOrViolation;
}

}  // namespace

std::optional<double> parse_real(std::string_view text) {
  std::string s(text);
  for (std::size_t pos; (pos = s.find("π")) != std::string::npos;) s.replace(pos, std::string("π").size(), "pi");
  const std::size_t pi_pos = s.find("pi");
  if (pi_pos == std::string::npos) return parse_plain(s);

  std::string prefix = s.substr(0, pi_pos);
  const std::string suffix = s.substr(pi_pos + 2);
  if (!prefix.empty() && prefix.back() == '*') prefix.pop_back();
  double coeff = 1.0;
  if (prefix == "-") {
    coeff = -1.0;
  } else if (!prefix.empty() && prefix != "+") {
    const auto c = parse_plain(prefix);
    if (!c) return std::nullopt;
    coeff = *c;
  }
  double denom = 1.0;
  if (!suffix.empty()) {
    if (suffix.front() != '/') return std::nullopt;
    const auto d = parse_plain(suffix.substr(1));
    if (!d || *d == 0.0) return std::nullopt;
    denom = *d;
  }
  return coeff * kPi / denom;
}

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"opexp: operator exponential toolkit", "opexp"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  Output o;
  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--out", o.out_path, "Write the JSON document to PATH");
    sub->add_flag("--json", o.json, "Print the JSON document to stdout instead of text");
  };

  std::string input;
  bool oracle = false;
  auto* expm_cmd = app.add_subcommand("expm", "Matrix exponential of a matrix file");
  expm_cmd->add_option("input", input, "Matrix JSON file")->required();
  expm_cmd->add_flag("--oracle", oracle, "Also run the spectral path and report the disagreement");
  add_output(expm_cmd);

  bool imag_part = false;
  std::vector<double> interval;
  auto* spectrum_cmd = app.add_subcommand("spectrum", "Eigenvalues and interval certificates");
  spectrum_cmd->add_option("input", input, "Matrix JSON file")->required();
  spectrum_cmd->add_flag("--imag-part", imag_part, "Use the spectrum of Im T");
  spectrum_cmd->add_option("--interval", interval, "Certify the spectrum inside (LO, HI)")->expected(2);
  add_output(spectrum_cmd);

  CheckArgs check;
  std::uint64_t seed_value = 0;
  auto* check_cmd = app.add_subcommand("check", "Run a theorem check on files or generated instances");
  check_cmd->add_option("name", check.name, "Check name")->required();
  check_cmd->add_option("files", check.files, "Matrix JSON files");
  check_cmd->add_flag("--generate", check.generate, "Draw instances from the generators");
  auto* seed_opt = check_cmd->add_option("--seed", seed_value, "Generator seed (default: $OPEXP_DEFAULT_SEED or 0)");
  check_cmd->add_option("--dim", check.dim, "Instance dimension")->check(CLI::PositiveNumber);
  check_cmd->add_option("--trials", check.trials, "Number of generated instances");
  check_cmd->add_option("--box", check.box, "Spectrum box RE_LO RE_HI IM_LO IM_HI")->expected(4);
  check_cmd->add_option("--norm-cap", check.norm_cap, "Frobenius cap on generated spectra");
  check_cmd->add_option("--family", check.family, "Instance family: standard or counterexample");
  check_cmd->add_option("--tol-commute", check.tol_commute, "Residuals at or below this read as zero");
  check_cmd->add_option("--tol-refute", check.tol_refute, "Residuals at or above this read as nonzero");
  check_cmd->add_option("--interval", check.interval, "Interval for selfadjoint_vs_normal")->expected(2);
  check_cmd->add_flag("--diagnostics", check.diagnostics, "Record intermediate identities (main_transfer)");
  check_cmd->add_flag("--no-timestamp", o.no_timestamp, "Omit started_at from the manifest");
  add_output(check_cmd);

  auto* example_cmd = app.add_subcommand("paper-example", "Reproduce the canonical non-commuting pair");
  example_cmd->add_flag("--no-timestamp", o.no_timestamp, "Omit started_at from the manifest");
  add_output(example_cmd);

  try {
    std::vector<std::string> args = normalize_interval_args(raw_args);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "opexp: " << e.what() << '\n';
    return kBadInput;
  } catch (const UsageError& e) {
    err << "opexp: " << e.what() << '\n';
    return kBadInput;
  }

  const std::string command_line = join(raw_args);
  try {
    if (*expm_cmd) return cmd_expm(input, oracle, o, out);
    if (*spectrum_cmd) return cmd_spectrum(input, imag_part, interval, o, out, err);
    if (*check_cmd) {
      if (seed_opt->count() > 0) check.seed = seed_value;
      return cmd_check(check, o, command_line, out);
    }
    return cmd_canonical_example(o, command_line, out);
  } catch (const UsageError& e) {
    err << "opexp: " << e.what() << '\n';
    return kBadInput;
  } catch (const ParseError& e) {
    err << "opexp: " << e.what() << '\n';
    return kBadInput;
  } catch (const InvalidMatrix& e) {
    err << "opexp: " << e.what() << '\n';
    return kBadInput;
  } catch (const DimensionMismatch& e) {
    err << "opexp: " << e.what() << '\n';
    return kBadInput;
  } catch (const OverflowError& e) {
    err << "opexp: " << e.what() << '\n';
    return kOverflow;
  } catch (const NotNormal& e) {
    err << "opexp: " << e.what() << '\n';
    return kNotNormal;
  } catch (const Error& e) {
    err << "opexp: " << e.what() << '\n';
    return kBadInput;
  }
}

}  // namespace opexp::cli
