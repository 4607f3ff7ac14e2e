#pragma once

#include <cstdint>

namespace gupbell {

// Counter-based stream: the value at a given index depends only on
// (seed, index), never on how the indices are distributed over threads.
// The mixer is the SplitMix64 finalizer applied to seed + (index+1)*golden.
inline std::uint64_t stream_bits(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Uniform double in [0, 1) with 53 random bits.
inline double stream_uniform(std::uint64_t seed, std::uint64_t index) {
  return static_cast<double>(stream_bits(seed, index) >> 11) * 0x1.0p-53;
}

}  // namespace gupbell
