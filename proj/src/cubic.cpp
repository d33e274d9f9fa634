#include "jhflow/cubic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace jhflow::cubic {

namespace {

double p3_derivative(double h, double c1) noexcept { return 3.0 * h * h + 12.0 * h + 6.0 * c1; }

double newton_polish(double h, ParameterPoint p) noexcept {
    const double d = p3_derivative(h, p.c1);
    if (d == 0.0) {
        return h;
    }
    const double next = h - p3_eval(h, p) / d;
    // keep the polish only if it helps
    return std::abs(p3_eval(next, p)) <= std::abs(p3_eval(h, p)) ? next : h;
}

bool near(double x, double target) noexcept {
    return std::abs(x - target) <= kBoundaryTolerance * std::max(1.0, std::abs(target));
}

// s = sqrt(2 (2 - C1)), the scale of the repeated-root factorizations.
double boundary_scale(double c1) noexcept { return std::sqrt(2.0 * (2.0 - c1)); }

}  // namespace

void ParameterPoint::validate() const {
    if (!std::isfinite(c1) || !std::isfinite(c2)) {
        throw std::domain_error("parameter point (C1, C2) must be finite");
    }
}

std::string_view to_string(RegionTag tag) noexcept {
    switch (tag) {
        case RegionTag::I1: return "I1";
        case RegionTag::Gamma0: return "Gamma0";
        case RegionTag::I2: return "I2";
        case RegionTag::P0: return "P0";
        case RegionTag::II: return "II";
        case RegionTag::GammaPlus: return "GammaPlus";
        case RegionTag::GammaMinus: return "GammaMinus";
    }
    return "?";
}

std::optional<RegionTag> region_from_string(std::string_view name) noexcept {
    for (auto tag : {RegionTag::I1, RegionTag::Gamma0, RegionTag::I2, RegionTag::P0, RegionTag::II,
                     RegionTag::GammaPlus, RegionTag::GammaMinus}) {
        if (to_string(tag) == name) {
            return tag;
        }
    }
    return std::nullopt;
}

bool in_region_I(RegionTag tag) noexcept {
    return tag == RegionTag::I1 || tag == RegionTag::Gamma0 || tag == RegionTag::I2;
}

double p3_eval(double h, ParameterPoint p) noexcept {
    return ((h + 6.0) * h + 6.0 * p.c1) * h + p.c2;
}

std::optional<double> boundary_curve(double c1, int sign) {
    if (!(c1 <= 2.0)) {
        return std::nullopt;
    }
    const double w = 2.0 - c1;
    return 12.0 * c1 - 16.0 + (sign >= 0 ? 4.0 : -4.0) * w * std::sqrt(2.0 * w);
}

Discriminants discriminants(ParameterPoint p) {
    const double c1 = p.c1;
    const double c2 = p.c2;
    Discriminants d{};
    d.delta_cubic = -27.0 * (c2 * c2 + (-24.0 * c1 + 32.0) * c2 + 32.0 * c1 * c1 * c1 - 48.0 * c1 * c1);
    const double w = c1 - 2.0;
    d.delta_square = -128.0 * w * w * w;
    d.l_plus = boundary_curve(c1, +1);
    d.l_minus = boundary_curve(c1, -1);
    return d;
}

RegionTag classify(ParameterPoint p) {
    p.validate();
    if (near(p.c1, 2.0)) {
        return near(p.c2, 8.0) ? RegionTag::P0 : RegionTag::Gamma0;
    }
    if (p.c1 > 2.0) {
        return RegionTag::I1;
    }
    const double lp = *boundary_curve(p.c1, +1);
    const double lm = *boundary_curve(p.c1, -1);
    if (near(p.c2, lp)) {
        return RegionTag::GammaPlus;
    }
    if (near(p.c2, lm)) {
        return RegionTag::GammaMinus;
    }
    if (p.c2 > lm && p.c2 < lp) {
        return RegionTag::II;
    }
    return RegionTag::I2;
}

CubicRoots solve_cubic(ParameterPoint p) {
    const RegionTag region = classify(p);
    // Depressed form with h = t - 2: t^3 + P t + Q.
    const double big_p = 6.0 * (p.c1 - 2.0);
    const double big_q = p.c2 - 12.0 * p.c1 + 16.0;

    switch (region) {
        case RegionTag::P0:
            return TripleReal{-2.0};
        case RegionTag::GammaPlus: {
            const double s = boundary_scale(p.c1);
            return DoubleAndSimple{-2.0 + s, -2.0 - 2.0 * s};
        }
        case RegionTag::GammaMinus: {
            const double s = boundary_scale(p.c1);
            return DoubleAndSimple{-2.0 - s, -2.0 + 2.0 * s};
        }
        case RegionTag::II: {
            const double r = 2.0 * std::sqrt(-big_p / 3.0);
            double arg = (3.0 * big_q / (2.0 * big_p)) * std::sqrt(-3.0 / big_p);
            arg = std::clamp(arg, -1.0, 1.0);
            const double phi = std::acos(arg) / 3.0;
            std::array<double, 3> h{};
            for (int k = 0; k < 3; ++k) {
                const double t = r * std::cos(phi - 2.0 * std::numbers::pi * k / 3.0);
                h[k] = newton_polish(t - 2.0, p);
            }
            std::sort(h.begin(), h.end());
            return ThreeDistinctReal{h[0], h[1], h[2]};
        }
        case RegionTag::I1:
        case RegionTag::Gamma0:
        case RegionTag::I2: {
            const double half_q = 0.5 * big_q;
            const double third_p = big_p / 3.0;
            const double sq = std::sqrt(std::max(0.0, half_q * half_q + third_p * third_p * third_p));
            // Pick the non-cancelling cube root, then use u v = -P/3.
            const double u = std::cbrt(-half_q + (half_q <= 0.0 ? sq : -sq));
            const double t = u == 0.0 ? 0.0 : u - third_p / u;
            const double alpha = newton_polish(newton_polish(t - 2.0, p), p);
            // P3 = (h - alpha)(h^2 + B h + D)
            const double b = 6.0 + alpha;
            const double d = 6.0 * p.c1 + alpha * b;
            const double n2 = d - 0.25 * b * b;
            return OneRealPlusConjugate{alpha, -0.5 * b, std::sqrt(std::max(n2, 0.0))};
        }
    }
    throw std::logic_error("unreachable region");
}

std::vector<double> real_roots(const CubicRoots& roots) {
    return std::visit(
        [](const auto& r) -> std::vector<double> {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, ThreeDistinctReal>) {
                return {r.a, r.b, r.c};
            } else if constexpr (std::is_same_v<T, DoubleAndSimple>) {
                std::vector<double> v{r.double_root, r.double_root, r.simple_root};
                std::sort(v.begin(), v.end());
                return v;
            } else if constexpr (std::is_same_v<T, TripleReal>) {
                return {r.r, r.r, r.r};
            } else {
                return {r.alpha};
            }
        },
        roots);
}

}  // namespace jhflow::cubic
