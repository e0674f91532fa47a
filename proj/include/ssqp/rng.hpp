#pragma once

#include <cstdint>
#include <random>

namespace ssqp {

using Rng = std::mt19937_64;

/// Derives an independent seed for a named substream (run index, trial index,
/// ...) from a root seed. SplitMix64 finalizer applied to each component.
inline std::uint64_t substream_seed(std::uint64_t root, std::uint64_t a,
                                    std::uint64_t b = 0) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(mix(mix(root) ^ a) ^ (b * 0xd1342543de82ef95ULL));
}

inline Rng make_rng(std::uint64_t root, std::uint64_t a = 0, std::uint64_t b = 0) {
  return Rng(substream_seed(root, a, b));
}

}  // namespace ssqp
