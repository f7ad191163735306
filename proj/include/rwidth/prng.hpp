#pragma once

#include <cstdint>

// Deterministic counter-based pseudo-random generator.
//
// The generator is the SplitMix64 sequence: the value at position k of the
// stream with seed s is  mix64(s + (k+1)*GOLDEN_GAMMA).  Because each value
// depends only on (seed, k), any draw can be computed independently of the
// others, which makes sampling loops trivially parallel and guarantees that
// results do not depend on thread count, platform, or evaluation order.
//
// Conventions used throughout the project:
//   * an unordered vertex pair (i,j), i<j, of an n-vertex graph consumes the
//     draw at its row-major index i*(2n-i-1)/2 + (j-i-1);
//   * a matrix entry (i,j) of a k1 x k2 matrix consumes the draw at i*k2+j;
//   * per-sample seeds are derived as derive_seed(master, sample_index).

namespace rwidth {

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

// SplitMix64 finalizer (Steele, Lea, Flood 2014).
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Value at position `index` of the stream with the given seed.
inline std::uint64_t draw_at(std::uint64_t seed, std::uint64_t index) {
  return mix64(seed + (index + 1) * kGoldenGamma);
}

// Documented hash for deriving per-sample seeds from a master seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return mix64(master ^ mix64((index + 1) * kGoldenGamma));
}

// Sequential view of the same stream: next() == draw_at(seed, k) for the
// k-th call.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += kGoldenGamma;
    return mix64(state_);
  }

  // Uniform value in [0, bound) by rejection-free multiply-shift; bound > 0.
  std::uint64_t next_below(std::uint64_t bound) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * bound) >> 64);
  }

  double next_unit() {  // [0,1) with 53-bit resolution
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

// Threshold T such that (draw < T) happens with probability p for a uniform
// 64-bit draw.  Exact IEEE scaling; p outside (0,1) must be special-cased by
// the caller (p<=0: never, p>=1: always).
inline std::uint64_t bernoulli_threshold(double p) {
  return static_cast<std::uint64_t>(p * 0x1.0p64);
}

}  // namespace rwidth
