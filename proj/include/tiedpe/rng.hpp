#pragma once

#include <cstdint>
#include <limits>

namespace tiedpe {

/// Scrambles a 64-bit value with the SplitMix64 finalizer (one full
/// generator step from state `x`). Used both as the generator core and as
/// a seed-derivation hash.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  std::uint64_t z = x + 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Derives the seed for sub-stream `index` from a master seed. The mapping
/// is fixed and documented so that published results can be reproduced on
/// any platform: derive_seed(s, i) = mix64(s ^ mix64(i)).
constexpr std::uint64_t derive_seed(std::uint64_t master,
                                    std::uint64_t index) noexcept {
  return mix64(master ^ mix64(index));
}

/// Small deterministic PRNG (SplitMix64). The standard <random> engines are
/// portable but the distribution adapters are not; this class pins both the
/// stream and the sampling algorithms so results are bit-identical across
/// compilers and standard libraries.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform integer in [0, n) with rejection sampling (no modulo bias).
  /// Requires n >= 1.
  std::uint64_t uniform_below(std::uint64_t n) noexcept {
    // 2^64 mod n; values >= 2^64 - r would bias the low residues.
    const std::uint64_t r =
        (std::numeric_limits<std::uint64_t>::max() % n + 1) % n;
    if (r == 0) return next() % n;
    const std::uint64_t limit = 0 - r;
    std::uint64_t x = next();
    while (x >= limit) x = next();
    return x % n;
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() noexcept {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

}  // namespace tiedpe
