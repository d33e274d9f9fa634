#include "jhflow/nonradial.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "jhflow/elliptic.hpp"

namespace jhflow::nonradial {

namespace {

constexpr std::array<std::string_view, 4> kVariantNames{"linear", "weierstrass", "degenerate", "numeric"};
constexpr double kBlowUp = 1e12;
// Fixed RK4 resolution used to evaluate a NumericLienard profile at any angle.
constexpr int kProfileSteps = 2000;

void require_finite(double x, const char* what) {
    if (!std::isfinite(x)) {
        throw std::domain_error(std::string(what) + " must be finite");
    }
}

LienardState rk4_step(const LienardState& s, double h, double c0, double ct1) {
    const auto accel = [&](double y, double dy) { return c0 * dy - y * y - 2.0 * (ct1 + 2.0) * y; };
    const double k1y = s.dh;
    const double k1v = accel(s.h, s.dh);
    const double k2y = s.dh + 0.5 * h * k1v;
    const double k2v = accel(s.h + 0.5 * h * k1y, s.dh + 0.5 * h * k1v);
    const double k3y = s.dh + 0.5 * h * k2v;
    const double k3v = accel(s.h + 0.5 * h * k2y, s.dh + 0.5 * h * k2v);
    const double k4y = s.dh + h * k3v;
    const double k4v = accel(s.h + h * k3y, s.dh + h * k3v);
    return {s.theta + h, s.h + h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y),
            s.dh + h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)};
}

void check_blow_up(const LienardState& s) {
    if (!(std::abs(s.h) <= kBlowUp) || !std::isfinite(s.dh)) {
        throw BlowUpError("Lienard trajectory blew up near theta = " + std::to_string(s.theta));
    }
}

std::vector<ThetaInterval> split_window(const ThetaInterval& w, std::vector<double> cuts) {
    std::sort(cuts.begin(), cuts.end());
    std::vector<ThetaInterval> pieces;
    ThetaInterval current = w;
    for (double cut : cuts) {
        if (cut < w.lo || cut > w.hi) {
            continue;
        }
        if (cut > current.lo) {
            pieces.push_back({current.lo, cut, current.lo_open, true});
        }
        current.lo = cut;
        current.lo_open = true;
    }
    if (current.lo < current.hi) {
        pieces.push_back(current);
    }
    return pieces;
}

}  // namespace

std::string_view to_string(Variant variant) noexcept { return kVariantNames[static_cast<std::size_t>(variant)]; }

std::optional<Variant> variant_from_string(std::string_view name) noexcept {
    for (std::size_t i = 0; i < kVariantNames.size(); ++i) {
        if (kVariantNames[i] == name) {
            return static_cast<Variant>(i);
        }
    }
    return std::nullopt;
}

double integrable_ctilde1(double c0) noexcept { return -2.0 + 3.0 * c0 * c0 / 25.0; }

double integrable_c1(double c0) noexcept {
    const double c02 = c0 * c0;
    return 2.0 - c02 / 2.0 - 9.0 * c02 * c02 / 1250.0;
}

double linear_coefficient(double c0, double c1, int branch) {
    require_finite(c0, "C0");
    require_finite(c1, "C1");
    const double radicand = 4.0 - c0 * c0 - 2.0 * c1;
    if (radicand < 0.0) {
        throw std::domain_error("linear solution needs C0^2 <= 4 - 2 C1");
    }
    return -2.0 + (branch >= 0 ? 1.0 : -1.0) * std::sqrt(radicand);
}

double reduced_equation_residual(double z, double h, double dh, double d2h, double c0, double c1) noexcept {
    const double zz = z * z + 1.0;
    return zz * zz * d2h + (2.0 * z - c0) * zz * dh + h * h + (2.0 * c0 * z + 4.0) * h +
           2.0 * c0 * z * z * z + 6.0 * c0 * z + 2.0 * c1;
}

NonRadialSpec make_linear(double c0, double c1, int branch) {
    NonRadialSpec s;
    s.c0 = c0;
    s.ctilde1 = linear_coefficient(c0, c1, branch);
    s.variant = Variant::LinearOnly;
    validate(s);
    return s;
}

NonRadialSpec make_weierstrass(double c0, double g3, double shift) {
    NonRadialSpec s;
    s.c0 = c0;
    s.ctilde1 = integrable_ctilde1(c0);
    s.g3 = g3;
    s.shift = shift;
    s.variant = Variant::Weierstrass;
    validate(s);
    return s;
}

NonRadialSpec make_degenerate(double c0, double shift) {
    NonRadialSpec s;
    s.c0 = c0;
    s.ctilde1 = integrable_ctilde1(c0);
    s.shift = shift;
    s.variant = Variant::Degenerate;
    validate(s);
    return s;
}

NonRadialSpec make_numeric(double c0, double ctilde1, double h0, double dh0) {
    NonRadialSpec s;
    s.c0 = c0;
    s.ctilde1 = ctilde1;
    s.variant = Variant::NumericLienard;
    s.h0 = h0;
    s.dh0 = dh0;
    validate(s);
    return s;
}

void validate(const NonRadialSpec& s) {
    require_finite(s.c0, "C0");
    require_finite(s.ctilde1, "Ctilde1");
    require_finite(s.g3, "g3");
    require_finite(s.shift, "C");
    require_finite(s.h0, "H(0)");
    require_finite(s.dh0, "H'(0)");
    if (s.c0 == 0.0) {
        throw std::domain_error("non-radial solutions need C0 != 0");
    }
    if (s.variant == Variant::Weierstrass || s.variant == Variant::Degenerate) {
        const double expected = integrable_ctilde1(s.c0);
        if (std::abs(s.ctilde1 - expected) > 1e-12 * std::max(1.0, std::abs(expected))) {
            throw std::domain_error("integrable variants need Ctilde1 = -2 + 3 C0^2 / 25");
        }
    }
    if (s.variant == Variant::Degenerate && s.g3 != 0.0) {
        throw std::domain_error("the degenerate variant has g3 = 0");
    }
}

double lienard_rhs(const LienardState& state, double c0, double ctilde1) noexcept {
    return c0 * state.dh - state.h * state.h - 2.0 * (ctilde1 + 2.0) * state.h;
}

std::vector<LienardState> lienard_integrate(const NonRadialSpec& spec, LienardState init, double theta_end,
                                            double step) {
    if (!(step > 0.0) || !std::isfinite(step)) {
        throw std::domain_error("step must be positive");
    }
    require_finite(theta_end, "theta_end");
    require_finite(init.theta, "initial theta");
    require_finite(init.h, "initial H");
    require_finite(init.dh, "initial H'");
    const double span = theta_end - init.theta;
    const auto steps = static_cast<std::size_t>(std::ceil(std::abs(span) / step - 1e-9));
    std::vector<LienardState> out;
    out.reserve(steps + 1);
    out.push_back(init);
    const double h = span >= 0.0 ? step : -step;
    LienardState s = init;
    for (std::size_t i = 0; i < steps; ++i) {
        const double dt = (i + 1 == steps) ? theta_end - s.theta : h;
        s = rk4_step(s, dt, spec.c0, spec.ctilde1);
        check_blow_up(s);
        out.push_back(s);
    }
    if (!out.empty()) {
        out.back().theta = theta_end;
    }
    return out;
}

double first_integral(const LienardState& state, double c0) noexcept {
    const double lead = state.dh - 0.4 * c0 * state.h;
    return (lead * lead + 2.0 / 3.0 * state.h * state.h * state.h) * std::exp(-1.2 * c0 * state.theta);
}

AngularValue weierstrass_H_derivatives(double theta, double c0, double g3, double shift) {
    require_finite(theta, "theta");
    const double lam = c0 / 5.0;
    const double tau = std::exp(lam * theta);
    const auto [p, dp] = elliptic::weierstrass_eval(tau + shift, {0.0, g3});
    const double t2 = tau * tau;
    const double t3 = t2 * tau;
    const double l2 = lam * lam;
    const double l3 = l2 * lam;
    return {-6.0 * l2 * t2 * p, -6.0 * l3 * (2.0 * t2 * p + t3 * dp),
            -6.0 * l3 * lam * (4.0 * t2 * p + 5.0 * t3 * dp + 6.0 * t2 * t2 * p * p)};
}

double weierstrass_H(double theta, double c0, double g3, double shift) {
    return weierstrass_H_derivatives(theta, c0, g3, shift).h;
}

AngularValue degenerate_H_derivatives(double theta, double c0, double shift) {
    require_finite(theta, "theta");
    const double lam = c0 / 5.0;
    const double e = shift * std::exp(-lam * theta);  // D - 1
    const double d = 1.0 + e;
    if (std::abs(d) < elliptic::kPoleGuard) {
        throw elliptic::PoleProximityError("1 + C exp(-C0 theta / 5) vanishes");
    }
    const double l2 = lam * lam;
    const double d2 = d * d;
    return {-6.0 * l2 / d2, -12.0 * l2 * lam * e / (d2 * d), 12.0 * l2 * l2 * e * (3.0 - 2.0 * d) / (d2 * d2)};
}

AngularValue angular_profile(const NonRadialSpec& spec, double theta) {
    require_finite(theta, "theta");
    switch (spec.variant) {
        case Variant::LinearOnly:
            return {0.0, 0.0, 0.0};
        case Variant::Weierstrass:
            return weierstrass_H_derivatives(theta, spec.c0, spec.g3, spec.shift);
        case Variant::Degenerate:
            return degenerate_H_derivatives(theta, spec.c0, spec.shift);
        case Variant::NumericLienard: {
            LienardState s{0.0, spec.h0, spec.dh0};
            const double dt = theta / kProfileSteps;
            if (dt != 0.0) {
                for (int i = 0; i < kProfileSteps; ++i) {
                    s = rk4_step(s, dt, spec.c0, spec.ctilde1);
                    check_blow_up(s);
                }
            }
            return {s.h, s.dh, lienard_rhs(s, spec.c0, spec.ctilde1)};
        }
    }
    throw std::logic_error("unknown variant");
}

FieldSample landau_field(double radial_coeff, double swirl, double x, double y) {
    const double r2 = x * x + y * y;
    if (!(r2 > 0.0) || !std::isfinite(r2)) {
        throw std::domain_error("field is undefined at the origin");
    }
    return {(radial_coeff * x - swirl * y) / r2, (radial_coeff * y + swirl * x) / r2,
            -(radial_coeff * radial_coeff + swirl * swirl) / (2.0 * r2)};
}

FieldSample nonradial_field(const NonRadialSpec& spec, double x, double y) {
    validate(spec);
    if (!(x > 0.0) || !std::isfinite(y)) {
        throw std::domain_error("non-radial fields are evaluated on x > 0");
    }
    const double big_h = angular_profile(spec, std::atan(y / x)).h;
    const FieldSample lin = landau_field(spec.ctilde1, spec.c0, x, y);
    const double r2 = x * x + y * y;
    return {lin.u + x * big_h / r2, lin.v + y * big_h / r2, lin.p + 2.0 * big_h / r2};
}

FieldSample degenerate_field(double c0, double shift, double x, double y) {
    require_finite(c0, "C0");
    require_finite(shift, "C");
    if (!(x > 0.0) || !std::isfinite(y)) {
        throw std::domain_error("non-radial fields are evaluated on x > 0");
    }
    const double theta = std::atan(y / x);
    const double d = 1.0 + shift * std::exp(-c0 / 5.0 * theta);
    if (std::abs(d) < elliptic::kPoleGuard) {
        throw elliptic::PoleProximityError("1 + C exp(-C0 theta / 5) vanishes");
    }
    const double r2 = x * x + y * y;
    const double factor = 6.0 * c0 * c0 / (25.0 * r2) / (d * d);
    const FieldSample lin = landau_field(integrable_ctilde1(c0), c0, x, y);
    return {lin.u - x * factor, lin.v - y * factor, lin.p - 2.0 * factor};
}

std::vector<ThetaInterval> pole_free_windows(const NonRadialSpec& spec, ThetaInterval window) {
    validate(spec);
    std::vector<double> cuts;
    const double lam = spec.c0 / 5.0;
    const auto theta_of_tau = [lam](double tau) { return std::log(tau) / lam; };
    const bool shifted_pole_only =
        spec.variant == Variant::Degenerate || (spec.variant == Variant::Weierstrass && spec.g3 == 0.0);
    if (shifted_pole_only) {
        if (spec.shift < 0.0) {
            cuts.push_back(theta_of_tau(-spec.shift));
        }
    } else if (spec.variant == Variant::Weierstrass) {
        const double period = 2.0 * elliptic::weierstrass_real_half_period(spec.g3);
        const double t1 = std::exp(lam * window.lo);
        const double t2 = std::exp(lam * window.hi);
        const double jlo = std::ceil((std::min(t1, t2) + spec.shift) / period);
        const double jhi = std::floor((std::max(t1, t2) + spec.shift) / period);
        for (double j = jlo; j <= jhi; j += 1.0) {
            const double tau = j * period - spec.shift;
            if (tau > 0.0) {
                cuts.push_back(theta_of_tau(tau));
            }
        }
    }
    return split_window(window, std::move(cuts));
}

}  // namespace jhflow::nonradial
