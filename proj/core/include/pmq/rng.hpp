#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace pmq {

/// One step of the SplitMix64 sequence; advances the state.
inline std::uint64_t splitmix64(std::uint64_t& s) {
    s += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Seed for an independent stream (e.g. a Monte Carlo chunk or a restart)
/// derived from a master seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    std::uint64_t s = master ^ (0x9e3779b97f4a7c15ull * (stream + 1));
    const std::uint64_t a = splitmix64(s);
    return a ^ splitmix64(s);
}

/// Uniform double in [0, 1) from the top 53 bits of the generator.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Standard normal via Box-Muller. Pinned here (rather than using the
/// standard library distribution) so sampled streams are identical across
/// toolchains for a fixed seed.
inline double gauss(std::mt19937_64& rng) {
    const double u1 = 1.0 - uniform01(rng); // in (0, 1], safe for log
    const double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
}

} // namespace pmq
