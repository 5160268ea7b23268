#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "opexp/matrix.hpp"

namespace opexp {

/// Axis-aligned box in the complex plane that eigenvalues are drawn from.
/// Degenerate ranges (lo == hi) pin the corresponding coordinate.
struct SpectrumBox {
  double re_lo = 0.0;
  double re_hi = 0.0;
  double im_lo = 0.0;
  double im_hi = 0.0;

  friend bool operator==(const SpectrumBox&, const SpectrumBox&) = default;
};

struct GeneratorConfig {
  std::uint64_t seed = 0;
  std::size_t dim = 2;
  std::optional<SpectrumBox> spectrum_box;
  double norm_cap = 10.0;

  friend bool operator==(const GeneratorConfig&, const GeneratorConfig&) = default;
};

/// Throws GeneratorError when the config breaks its invariants.
void validate(const GeneratorConfig& cfg);

/// Same config with the seed replaced by the index-th derived stream.
GeneratorConfig split(const GeneratorConfig& cfg, std::uint64_t index);

/// Haar-distributed unitary from Gram-Schmidt on a complex Gaussian matrix.
ComplexMatrix random_unitary(const GeneratorConfig& cfg);

/// U diag(real eigenvalues) U^*; eigenvalues uniform in [re_lo, re_hi]
/// (the imaginary range of the box is ignored).
ComplexMatrix random_hermitian(const GeneratorConfig& cfg);

/// U diag(alpha + i beta) U^* with (alpha, beta) uniform in the box, so the
/// spectrum of Im N is exactly {beta_k}. Requires spectrum_box.
ComplexMatrix random_normal_constrained(const GeneratorConfig& cfg);

/// U diag(p) U^* with p in {0, 1}. With `nontrivial`, p is neither all zeros
/// nor all ones (requires dim >= 2).
ComplexMatrix random_projection(const GeneratorConfig& cfg, bool nontrivial);

struct CommutingPairOptions {
  /// Gives A an upper-triangular 2x2 block over a repeated eigenvalue of N,
  /// so A commutes with N without being normal. Ignored for dim 1.
  bool nonnormal_a = false;
};

/// (A, N) diagonal in one random unitary basis; N's spectrum comes from the
/// box when present.
std::pair<ComplexMatrix, ComplexMatrix> commuting_pair(const GeneratorConfig& cfg,
                                                       CommutingPairOptions options = {});

/// (A, B) with B = A + 2 pi i P, P a projection in A's eigenbasis. A is drawn
/// as in random_normal_constrained and its box must have Im range inside
/// (0, pi). `projection` fixes the diagonal of P; otherwise a nontrivial one
/// is drawn.
std::pair<ComplexMatrix, ComplexMatrix> equal_exp_pair(
    const GeneratorConfig& cfg, const std::optional<std::vector<bool>>& projection = std::nullopt);

/// (A, B) with A the canonical 2x2 rotation generator and B = S diag(i pi, -i pi) S^{-1}
/// for a random S with condition number <= 100. Requires dim == 2.
std::pair<ComplexMatrix, ComplexMatrix> lattice_counterexample(const GeneratorConfig& cfg);

/// The same construction with a caller-chosen change of basis S.
std::pair<ComplexMatrix, ComplexMatrix> lattice_counterexample_with_basis(const ComplexMatrix& s);

/// (a, n): n normal with Im spectrum in the box (default im range
/// [0.1, pi - 0.1]) and one repeated eigenvalue when dim >= 2; a is a random
/// element of the commutant of exp(n), computed from exp(n) alone.
std::pair<ComplexMatrix, ComplexMatrix> exp_commutant_pair(const GeneratorConfig& cfg);

/// U diag(values) U^*.
ComplexMatrix conjugate_diagonal(const ComplexMatrix& u, std::span<const Complex> values);

/// (h + h^*) / 2
ComplexMatrix hermitian_part(const ComplexMatrix& h);

}  // namespace opexp
