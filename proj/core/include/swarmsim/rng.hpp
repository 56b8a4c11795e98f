#pragma once

#include <cstdint>

namespace swarmsim {

/// SplitMix64 generator (Vigna's splitmix64.c constants). Chosen because it is
/// tiny, fast, and fully specified by three published constants, so trials
/// reproduce across implementations and platforms:
///   state += 0x9E3779B97F4A7C15
///   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///   z ^= z >> 31
/// Reference outputs for seed 0: e220a8397b1dcdaf, 6e789e6aa1b965f4, ...
class SplitMix64 {
public:
    SplitMix64() = default;
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1), 53 mantissa bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) {
        return lo + next_double() * (hi - lo);
    }

    uint64_t state() const { return state_; }

    bool operator==(const SplitMix64&) const = default;

private:
    uint64_t state_ = 0;
};

}  // namespace swarmsim
