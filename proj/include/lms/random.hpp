#pragma once

#include <cstdint>
#include <random>

namespace lms {

/// Seeded generator with a portable real mapping: the mt19937_64 sequence is
/// fixed by the standard, std::uniform_real_distribution is not.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const noexcept { return seed_; }

    /// Uniform in [0,1) with 53 random bits.
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

    bool coin() { return (engine_() >> 63) != 0; }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

}  // namespace lms
