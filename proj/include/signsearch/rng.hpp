#pragma once

#include <cmath>
#include <cstdint>

namespace signsearch {

// SplitMix64: tiny deterministic PRNG with a portable bit-exact stream.
// Used everywhere randomness must reproduce bit-for-bit across platforms;
// std::<distribution> outputs are implementation-defined and unusable here.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Standard normal via Box-Muller (two uniforms per draw, no cached spare).
    double normal() {
        double u1 = 1.0 - uniform(); // (0, 1]
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }

    // Derive an independent stream for (seed, stream_id).
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream_id) {
        SplitMix64 g(seed ^ (0x9E3779B97F4A7C15ull * (stream_id + 1)));
        return g.next();
    }

private:
    std::uint64_t state_;
};

} // namespace signsearch
