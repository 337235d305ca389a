#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace sqg {

/// Counter-based generator: every draw is a pure hash of (seed, stream,
/// counter), so recipe evaluation order cannot change the data and results
/// are identical across platforms.
struct CounterRng {
    uint64_t seed = 0;

    static uint64_t splitmix(uint64_t x) {
        x += 0x9E3779B97F4A7C15ull;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
        return x ^ (x >> 31);
    }

    uint64_t bits(uint64_t stream, uint64_t counter) const {
        return splitmix(seed ^ splitmix(stream ^ splitmix(counter)));
    }

    /// Uniform in (0, 1].
    double uniform(uint64_t stream, uint64_t counter) const {
        return (static_cast<double>(bits(stream, counter) >> 11) + 1.0) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller on two decorrelated draws.
    double normal(uint64_t stream, uint64_t counter) const {
        const double u1 = uniform(stream * 2 + 1, counter);
        const double u2 = uniform(stream * 2 + 2, counter);
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * std::numbers::pi * u2);
    }
};

}  // namespace sqg
