#pragma once

#include <complex>
#include <cstdint>

// Counter-based random number generation.
//
// Every draw is a pure function of (seed, counter), so sequences can be
// regenerated from any index, in any order, on any thread, and the bits are
// identical across platforms.  The generator is the SplitMix64 finalizer
// applied to seed + (counter + 1) * GAMMA, where GAMMA = 0x9E3779B97F4A7C15
// (the 64-bit golden ratio).  This is exactly the output sequence of
// SplitMix64 seeded with `seed`, accessed at random positions.

namespace rpz {

inline constexpr std::uint64_t kSplitMixGamma = 0x9E3779B97F4A7C15ULL;

/// SplitMix64 finalizer (Stafford's Mix13 variant, as in the reference
/// implementation by Sebastiano Vigna).
inline constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

/// Raw 64 bits at position `counter` of stream `seed`.
inline constexpr std::uint64_t bits_at(std::uint64_t seed,
                                       std::uint64_t counter) noexcept {
  return mix64(seed + (counter + 1) * kSplitMixGamma);
}

/// Uniform double in (0, 1].  Uses the top 53 bits; the +1 shifts the
/// lattice off zero so logarithms of the result are always finite.
inline double uniform_at(std::uint64_t seed, std::uint64_t counter) noexcept {
  const std::uint64_t u53 = (bits_at(seed, counter) >> 11) + 1;
  return static_cast<double>(u53) * 0x1.0p-53;
}

/// Derives a child stream seed; used to give substreams (e.g. one per trial)
/// statistically independent counters.
inline constexpr std::uint64_t substream(std::uint64_t seed,
                                         std::uint64_t key) noexcept {
  return bits_at(seed, key);
}

}  // namespace rpz
