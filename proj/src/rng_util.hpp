#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace lenz::detail {

// Deterministic helpers on top of std::mt19937_64.  The engine's output
// sequence is fully specified by the standard; doubles are derived from raw
// bits rather than through distribution objects (whose algorithms are
// implementation-defined), so every platform sees identical streams.

inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0, 1)
}

inline double uniform_pm1(std::mt19937_64& rng) {
    return 2.0 * uniform01(rng) - 1.0;  // [-1, 1)
}

// Standard normal via Box-Muller on bit-derived uniforms.
inline double gaussian(std::mt19937_64& rng) {
    double u;
    do {
        u = uniform01(rng);
    } while (u <= 0.0);
    const double v = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u)) * std::cos(6.283185307179586477 * v);
}

// Uniform index in [0, n) by rejection (avoids modulo bias and keeps the
// consumed stream identical everywhere).
inline std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t n) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n + 1) % n;
    std::uint64_t x;
    do {
        x = rng();
    } while (x > limit);
    return x % n;
}

// Stable mix of several seeds into one engine seed (splitmix64 finalizer).
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0) {
    std::uint64_t z = a + 0x9e3779b97f4a7c15ull * (b + 1) + 0xbf58476d1ce4e5b9ull * (c + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

} // namespace lenz::detail
