#pragma once

#include <cstdint>
#include <random>

namespace fmdpsel {

/// Derives an independent stream seed from a root seed and a task index.
/// All randomness in the library flows through this so that a single root
/// seed reproduces every run bit-for-bit.
inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t task) {
    // splitmix64 finalizer over the combined word
    std::uint64_t z = root + 0x9e3779b97f4a7c15ULL * (task + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t root, std::uint64_t task = 0) {
    return Rng(derive_seed(root, task));
}

/// Uniform double in [0, 1).
inline double uniform01(Rng& rng) {
    return (rng() >> 11) * 0x1.0p-53;
}

}  // namespace fmdpsel
