#pragma once

#include <cstdint>
#include <random>

namespace spinchaos {

using Rng = std::mt19937_64;

/// splitmix64 finalizer; decorrelates nearby integer seeds.
constexpr std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Sub-seed for job `index` of a scan seeded with `seed`.
/// Rule (recorded in run manifests): splitmix64(seed + (index+1) * 0x9e3779b97f4a7c15).
constexpr std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(seed + (index + 1) * 0x9e3779b97f4a7c15ULL);
}

inline Rng make_rng(std::uint64_t seed) { return Rng(splitmix64(seed)); }

} // namespace spinchaos
