#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "jhflow/radial.hpp"

namespace jhflow::testing {

/// One radial profile per family plus the start of a unit-length angular span
/// that stays inside its principal validity piece.
struct RadialFixture {
    std::string name;
    radial::RadialProfileSpec spec;
    double span_start = -0.5;
};

inline std::vector<RadialFixture> radial_fixtures() {
    using radial::Family;
    using radial::make_profile;
    const auto f1 = make_profile(Family::F1, {3.0, 5.0}, 0.0);
    // Puts the am argument at 2K for theta = 0, half way between two poles.
    const double f1_shift = 2.0 * f1.big_k / std::sqrt(f1.beta);
    return {
        {"F0 simple root -6", make_profile(Family::F0, {0.0, 0.0}, -6.0), -0.5},
        {"F0 double root 0", make_profile(Family::F0, {0.0, 0.0}, 0.0), -0.5},
        {"F1", make_profile(Family::F1, {3.0, 5.0}, f1_shift), -0.5},
        {"F2", make_profile(Family::F2, {2.0, 8.0}, 1.0), 0.0},
        {"F3", make_profile(Family::F3, {-1.5, -14.0}, 0.0), -0.5},
        {"F4", make_profile(Family::F4, {-1.5, -14.0}, 0.0), -0.5},
        {"F5", make_profile(Family::F5, {0.0, 0.0}, 0.0), -0.5},
        {"F6", make_profile(Family::F6, {0.0, -32.0}, 0.0), -0.5},
        {"F7", make_profile(Family::F7, {0.0, -32.0}, 2.0), -0.5},
    };
}

/// Uniform doubles in [lo, hi) from a fixed-seed generator, reproducible
/// across standard libraries.
class Uniform {
public:
    explicit Uniform(std::uint64_t seed) : gen_(seed) {}
    double operator()(double lo, double hi) {
        const double unit = static_cast<double>(gen_() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * unit;
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace jhflow::testing
