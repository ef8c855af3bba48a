#pragma once

#include <cstdint>

namespace isoplab {

/// SplitMix64 (Steele, Lea, Flood 2014). 64-bit state advanced by the
/// golden-ratio increment 0x9E3779B97F4A7C15, output mixed with
/// multipliers 0xBF58476D1CE4E5B9 and 0x94D049BB133111EB.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, bound) by rejection: draws below 2^64 mod bound are
  /// discarded, the rest are reduced mod bound. bound must be > 0.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (true) {
      std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  /// Uniform in [lo, hi].
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }

 private:
  std::uint64_t state_;
};

/// Seed of the i-th independent trial: the first output of SplitMix64
/// seeded with seed ^ (0xD1B54A32D192ED03 * (i + 1)).
inline std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
  return SplitMix64(seed ^ (0xD1B54A32D192ED03ULL * (trial + 1))).next();
}

}  // namespace isoplab
