#pragma once

#include <cstdint>
#include <random>

namespace globenv {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Child seed for stream `index` of `parent`. Stable across versions.
constexpr std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index) noexcept {
    return mix64(mix64(parent) ^ mix64(index ^ 0x5851f42d4c957f2dULL));
}

/// Generator used for every simulated row. Normal deviates come from the
/// Boost.Random ziggurat, whose output does not depend on the standard library.
using Engine = std::mt19937_64;

} // namespace globenv
