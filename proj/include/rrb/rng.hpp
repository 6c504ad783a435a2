#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace rrb {

/// Generator used by every sampler. Each task owns its own instance.
using Engine = std::mt19937_64;

/// SplitMix64 finalizer.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Counter-keyed seed splitting: the seed for substream `index` of `base`.
/// Distinct indices give decorrelated generator states.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept {
    return splitmix64(splitmix64(base) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

/// Uniform variate on [0, 1) with 53 random bits.
inline double uniform01(Engine& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

/// Exponential variate with scale `delta` by inversion: -delta * ln(1 - U).
inline double exponential(Engine& eng, double delta) {
    return -delta * std::log(1.0 - uniform01(eng));
}

}  // namespace rrb
