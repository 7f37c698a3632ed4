#pragma once

#include <cstdint>

#include "mcis/gaussian.hpp"

namespace mcis {

/// Counter-based generator (splitmix64 over an explicit counter), so draw k
/// of stream `seed` is a pure function of (seed, k) and reproducible across
/// platforms and languages.
struct CounterRng {
    uint64_t seed = 0;
    uint64_t counter = 0;

    explicit CounterRng(uint64_t s = 0) : seed(s) {}

    static uint64_t mix(uint64_t seed, uint64_t k) {
        uint64_t z = seed + (k + 1) * 0x9E3779B97F4A7C15ull;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    uint64_t next_u64() { return mix(seed, counter++); }

    /// Uniform in (0, 1): 53 mantissa bits, offset half an ulp from 0.
    double next_uniform() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Standard normal by the inverse-CDF transform (deterministic, no
    /// rejection), as the rounding trials require.
    double next_gaussian() { return std_normal_quantile(next_uniform()); }

    /// Independent stream for (seed, index) sub-tasks, e.g. rounding trials.
    static CounterRng substream(uint64_t seed, uint64_t index) {
        return CounterRng(mix(seed, 0x5ca1ab1e00000000ull ^ index));
    }
};

}  // namespace mcis
