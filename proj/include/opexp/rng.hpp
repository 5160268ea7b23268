#pragma once

#include <array>
#include <cstdint>

#include "opexp/matrix.hpp"

namespace opexp {

/// SplitMix64 finalizer; used for seeding and stream splitting.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Seed of the index-th child stream of `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept;

/// xoshiro256** seeded through SplitMix64 from (seed, stream).
///
/// Every distribution below is written out explicitly so that a given
/// (seed, stream) produces the same numbers on every platform, which the
/// standard library distributions do not guarantee.
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream) noexcept;

  std::uint64_t next() noexcept;
  /// Uniform in [0, 1) with 53 random bits.
  double uniform() noexcept;
  /// Uniform in [lo, hi]; returns lo exactly when lo == hi.
  double uniform(double lo, double hi) noexcept;
  /// Standard normal via Box-Muller (no cached second value).
  double normal() noexcept;
  /// Circular complex Gaussian with E|z|^2 = 1.
  Complex complex_normal() noexcept;
  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound) noexcept;

 private:
  std::array<std::uint64_t, 4> state_{};
};

}  // namespace opexp
