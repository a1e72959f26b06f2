#pragma once

#include <cstdint>

namespace bnaco {

// Splitmix64 counter generator. Substreams are derived by hashing
// (seed, a, b), so a master seed can hand out independent, reproducible
// streams per (iteration, ant) or per repetition without sharing state.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), state_(mix(seed ^ 0x9E3779B97F4A7C15ull)) {}

    // Independent stream keyed by (a, b) relative to this generator's seed.
    Rng stream(std::uint64_t a, std::uint64_t b = 0) const {
        return Rng(mix(mix(seed_ ^ mix(a)) ^ mix(b ^ 0xD1B54A32D192ED03ull)));
    }

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ull;
        return mix(state_);
    }

    // Uniform in [0, 1), 53-bit resolution.
    double next_uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in [0, bound); bound > 0. Rejection keeps it unbiased.
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t limit = bound * (UINT64_MAX / bound);
        std::uint64_t v;
        do {
            v = next_u64();
        } while (v >= limit);
        return v % bound;
    }

    std::uint64_t seed() const { return seed_; }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9E3779B97F4A7C15ull;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    std::uint64_t seed_ = 0;
    std::uint64_t state_ = 0;
};

}  // namespace bnaco
