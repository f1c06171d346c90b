#pragma once

#include <cstdint>
#include <random>

namespace anfold::rng {

/** Seeded sampler with a fixed bit-to-double mapping, so identical seeds give
 *  identical streams on every platform (std::uniform_real_distribution makes
 *  no such promise).
 */
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : eng_(seed) {}

    /// Uniform in [0, 1) with 53 random bits.
    double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * unit(); }

    /// Uniform integer in [lo, hi] (inclusive).
    int uniform_int(int lo, int hi) {
        return lo + static_cast<int>(eng_() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    std::uint64_t raw() { return eng_(); }

private:
    std::mt19937_64 eng_;
};

}  // namespace anfold::rng
