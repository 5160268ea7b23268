#include "opexp/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "opexp/errors.hpp"
#include "opexp/expm.hpp"
#include "opexp/rng.hpp"
#include "opexp/spectral.hpp"

namespace opexp {
namespace {

// One stream per public operation.
enum Stream : std::uint64_t {
  kUnitaryStream = 1,
  kHermitianStream,
  kNormalStream,
  kProjectionStream,
  kCommutingStream,
  kEqualExpStream,
  kLatticeStream,
  kCommutantStream,
};

constexpr int kUnitaryAttempts = 3;
constexpr int kSpectrumAttempts = 16;
constexpr int kLatticeAttempts = 10;
constexpr double kLatticeMaxCondition = 100.0;

constexpr double kPi = std::numbers::pi;

const SpectrumBox kDefaultBox{-1.0, 1.0, -1.0, 1.0};
const SpectrumBox kDefaultTransferBox{-1.0, 1.0, 0.1, kPi - 0.1};

ComplexMatrix unitary_from(Rng& rng, std::size_t n) {
  for (int attempt = 0; attempt < kUnitaryAttempts; ++attempt) {
    ComplexMatrix q(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) q(i, j) = rng.complex_normal();

    bool deficient = false;
    for (std::size_t j = 0; j < n && !deficient; ++j) {
      double original = 0.0;
      for (std::size_t i = 0; i < n; ++i) original += std::norm(q(i, j));
      original = std::sqrt(original);
      // Two Gram-Schmidt passes keep orthogonality at roundoff level.
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t k = 0; k < j; ++k) {
          Complex dot{};
          for (std::size_t i = 0; i < n; ++i) dot += std::conj(q(i, k)) * q(i, j);
          for (std::size_t i = 0; i < n; ++i) q(i, j) -= dot * q(i, k);
        }
      }
      double norm = 0.0;
      for (std::size_t i = 0; i < n; ++i) norm += std::norm(q(i, j));
      norm = std::sqrt(norm);
      if (!(norm > 1e-10 * original)) {
        deficient = true;
        break;
      }
      for (std::size_t i = 0; i < n; ++i) q(i, j) /= norm;
    }
    if (!deficient) return q;
  }
  throw GeneratorError("random_unitary: rank-deficient Gaussian sample after retries");
}

double spectrum_norm(std::span<const Complex> values) {
  double sum = 0.0;
  for (const Complex& z : values) sum += std::norm(z);
  return std::sqrt(sum);
}

// Eigenvalues drawn in the box (rejection against norm_cap), or in the
// default box rescaled onto norm_cap.
std::vector<Complex> sample_spectrum(Rng& rng, const GeneratorConfig& cfg, bool real_only) {
  const std::size_t n = cfg.dim;
  const SpectrumBox& box = cfg.spectrum_box ? *cfg.spectrum_box : kDefaultBox;
  std::vector<Complex> values(n);
  for (int attempt = 0; attempt < kSpectrumAttempts; ++attempt) {
    for (auto& z : values) {
      const double re = rng.uniform(box.re_lo, box.re_hi);
      const double im = real_only ? 0.0 : rng.uniform(box.im_lo, box.im_hi);
      z = {re, im};
    }
    const double norm = spectrum_norm(values);
    if (norm <= cfg.norm_cap) return values;
    if (!cfg.spectrum_box) {
      for (auto& z : values) z *= cfg.norm_cap / norm;
      return values;
    }
  }
  throw GeneratorError("spectrum box is incompatible with norm_cap");
}

std::vector<Complex> sample_projection_diagonal(Rng& rng, std::size_t n, bool nontrivial) {
  if (nontrivial && n < 2) throw GeneratorError("no nontrivial projection exists in dimension 1");
  std::vector<Complex> p(n);
  std::size_t ones = 0;
  for (auto& v : p) {
    const bool bit = (rng.next() >> 63) != 0;
    v = bit ? 1.0 : 0.0;
    ones += bit ? 1 : 0;
  }
  if (nontrivial && (ones == 0 || ones == n)) {
    const std::size_t k = rng.below(n);
    p[k] = ones == 0 ? 1.0 : 0.0;
  }
  return p;
}

}  // namespace

void validate(const GeneratorConfig& cfg) {
  if (cfg.dim < 1) throw GeneratorError("dim must be at least 1");
  if (!(cfg.norm_cap > 0.0) || !std::isfinite(cfg.norm_cap)) throw GeneratorError("norm_cap must be positive");
  if (cfg.spectrum_box) {
    const SpectrumBox& b = *cfg.spectrum_box;
    for (double v : {b.re_lo, b.re_hi, b.im_lo, b.im_hi})
      if (!std::isfinite(v)) throw GeneratorError("spectrum box bounds must be finite");
    if (b.re_lo > b.re_hi || b.im_lo > b.im_hi) throw GeneratorError("spectrum box bounds are reversed");
  }
}

GeneratorConfig split(const GeneratorConfig& cfg, std::uint64_t index) {
  GeneratorConfig child = cfg;
  child.seed = derive_seed(cfg.seed, index);
  return child;
}

ComplexMatrix conjugate_diagonal(const ComplexMatrix& u, std::span<const Complex> values) {
  return mul(mul(u, ComplexMatrix::diagonal(values)), adjoint(u));
}

ComplexMatrix hermitian_part(const ComplexMatrix& h) { return scale(add(h, adjoint(h)), 0.5); }

ComplexMatrix random_unitary(const GeneratorConfig& cfg) {
  validate(cfg);
  Rng rng(cfg.seed, kUnitaryStream);
  return unitary_from(rng, cfg.dim);
}

ComplexMatrix random_hermitian(const GeneratorConfig& cfg) {
  validate(cfg);
  Rng rng(cfg.seed, kHermitianStream);
  const auto values = sample_spectrum(rng, cfg, true);
  const ComplexMatrix u = unitary_from(rng, cfg.dim);
  return hermitian_part(conjugate_diagonal(u, values));
}

ComplexMatrix random_normal_constrained(const GeneratorConfig& cfg) {
  validate(cfg);
  if (!cfg.spectrum_box) throw GeneratorError("random_normal_constrained requires a spectrum box");
  Rng rng(cfg.seed, kNormalStream);
  const auto values = sample_spectrum(rng, cfg, false);
  const ComplexMatrix u = unitary_from(rng, cfg.dim);
  return conjugate_diagonal(u, values);
}

ComplexMatrix random_projection(const GeneratorConfig& cfg, bool nontrivial) {
  validate(cfg);
  Rng rng(cfg.seed, kProjectionStream);
  const auto p = sample_projection_diagonal(rng, cfg.dim, nontrivial);
  const ComplexMatrix u = unitary_from(rng, cfg.dim);
  return hermitian_part(conjugate_diagonal(u, p));
}

std::pair<ComplexMatrix, ComplexMatrix> commuting_pair(const GeneratorConfig& cfg,
                                                       CommutingPairOptions options) {
  validate(cfg);
  Rng rng(cfg.seed, kCommutingStream);
  GeneratorConfig unboxed = cfg;
  unboxed.spectrum_box.reset();
  const auto a_values = sample_spectrum(rng, unboxed, false);
  auto n_values = sample_spectrum(rng, cfg, false);
  const ComplexMatrix u = unitary_from(rng, cfg.dim);

  ComplexMatrix core = ComplexMatrix::diagonal(a_values);
  if (options.nonnormal_a && cfg.dim >= 2) {
    n_values[1] = n_values[0];
    core(0, 1) = rng.complex_normal();
  }
  ComplexMatrix a = mul(mul(u, core), adjoint(u));
  ComplexMatrix n = conjugate_diagonal(u, n_values);
  return {std::move(a), std::move(n)};
}

std::pair<ComplexMatrix, ComplexMatrix> equal_exp_pair(const GeneratorConfig& cfg,
                                                       const std::optional<std::vector<bool>>& projection) {
  validate(cfg);
  if (!cfg.spectrum_box) throw GeneratorError("equal_exp_pair requires a spectrum box");
  if (!(cfg.spectrum_box->im_lo > 0.0 && cfg.spectrum_box->im_hi < kPi))
    throw GeneratorError("equal_exp_pair requires the imaginary range inside (0, pi)");
  if (projection && projection->size() != cfg.dim)
    throw GeneratorError("projection diagonal length must equal dim");

  Rng rng(cfg.seed, kEqualExpStream);
  const auto values = sample_spectrum(rng, cfg, false);
  const ComplexMatrix u = unitary_from(rng, cfg.dim);
  std::vector<Complex> p;
  if (projection) {
    for (bool bit : *projection) p.emplace_back(bit ? 1.0 : 0.0);
  } else {
    p = sample_projection_diagonal(rng, cfg.dim, true);
  }
  ComplexMatrix a = conjugate_diagonal(u, values);
  const ComplexMatrix proj = hermitian_part(conjugate_diagonal(u, p));
  ComplexMatrix b = add(a, scale(proj, Complex(0.0, 2.0 * kPi)));
  return {std::move(a), std::move(b)};
}

std::pair<ComplexMatrix, ComplexMatrix> lattice_counterexample_with_basis(const ComplexMatrix& s) {
  if (s.dim() != 2) throw GeneratorError("lattice counterexample is defined for dim 2 only");
  const std::vector<Complex> d{Complex(0.0, kPi), Complex(0.0, -kPi)};
  ComplexMatrix a{{0.0, kPi}, {-kPi, 0.0}};
  ComplexMatrix b = mul(mul(s, ComplexMatrix::diagonal(d)), inverse(s));
  return {std::move(a), std::move(b)};
}

std::pair<ComplexMatrix, ComplexMatrix> lattice_counterexample(const GeneratorConfig& cfg) {
  validate(cfg);
  if (cfg.dim != 2) throw GeneratorError("lattice counterexample is defined for dim 2 only");
  Rng rng(cfg.seed, kLatticeStream);
  for (int attempt = 0; attempt < kLatticeAttempts; ++attempt) {
    ComplexMatrix s(2);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) s(i, j) = rng.complex_normal();
    // Singular values of S are square roots of the eigenvalues of S^* S.
    const SpectralDecomposition gram = eig_hermitian(hermitian_part(mul(adjoint(s), s)));
    const double lo = gram.eigenvalues.front().real();
    const double hi = gram.eigenvalues.back().real();
    if (lo <= 0.0 || std::sqrt(hi / lo) > kLatticeMaxCondition) continue;
    return lattice_counterexample_with_basis(s);
  }
  throw GeneratorError("lattice_counterexample: no well-conditioned basis after retries");
}

std::pair<ComplexMatrix, ComplexMatrix> exp_commutant_pair(const GeneratorConfig& cfg) {
  validate(cfg);
  GeneratorConfig boxed = cfg;
  if (!boxed.spectrum_box) boxed.spectrum_box = kDefaultTransferBox;
  const std::size_t n = cfg.dim;
  Rng rng(cfg.seed, kCommutantStream);

  // Distinct eigenvalues must stay apart after exponentiation so that the
  // commutant of exp(n) is resolved cleanly.
  std::vector<Complex> values;
  bool separated = false;
  for (int attempt = 0; attempt < kSpectrumAttempts && !separated; ++attempt) {
    values = sample_spectrum(rng, boxed, false);
    if (n >= 2) values[1] = values[0];
    double scale_ref = 0.0;
    for (const Complex& z : values) scale_ref = std::max(scale_ref, std::abs(std::exp(z)));
    separated = true;
    for (std::size_t i = 0; i < n && separated; ++i)
      for (std::size_t j = i + 1; j < n && separated; ++j) {
        if (values[i] == values[j]) continue;
        if (std::abs(std::exp(values[i]) - std::exp(values[j])) < 1e-3 * scale_ref) separated = false;
      }
  }
  if (!separated) throw GeneratorError("exp_commutant_pair: could not separate exponentiated spectrum");

  const ComplexMatrix u = unitary_from(rng, n);
  ComplexMatrix n_mat = conjugate_diagonal(u, values);

  const ComplexMatrix e = expm(n_mat).value;
  const SpectralDecomposition d = eig_normal(e);
  double mu_scale = 1.0;
  for (const Complex& mu : d.eigenvalues) mu_scale = std::max(mu_scale, std::abs(mu));

  // Group eigenvalues of exp(n) into clusters (union-find over close pairs).
  std::vector<std::size_t> root(n);
  std::iota(root.begin(), root.end(), 0);
  auto find = [&](std::size_t x) {
    while (root[x] != x) x = root[x] = root[root[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(d.eigenvalues[i] - d.eigenvalues[j]) <= 1e-6 * mu_scale) root[find(i)] = find(j);

  ComplexMatrix block(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (find(i) == find(j)) block(i, j) = rng.complex_normal();
  ComplexMatrix a = mul(mul(d.basis, block), adjoint(d.basis));
  return {std::move(a), std::move(n_mat)};
}

}  // namespace opexp
