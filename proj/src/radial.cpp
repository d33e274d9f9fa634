#include "jhflow/radial.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include "jhflow/elliptic.hpp"

namespace jhflow::radial {

namespace {

using cubic::ParameterPoint;
using cubic::RegionTag;

constexpr std::array<std::string_view, 8> kFamilyNames{"F0", "F1", "F2", "F3", "F4", "F5", "F6", "F7"};
const double kRootEight = std::pow(8.0, 0.25);

// Poles closer than this (relative) count as hitting the pole.
constexpr double kPoleTolerance = 1e-12;

void require_admissible(bool ok, Family family, ParameterPoint p, std::string_view why) {
    if (!ok) {
        throw InadmissibleSpec(std::string(to_string(family)) + " is not admissible at (C1, C2) = (" +
                               std::to_string(p.c1) + ", " + std::to_string(p.c2) + "): " + std::string(why));
    }
}

// Angular frequency of the am argument for F1, F3, F4.
double am_frequency(const RadialProfileSpec& s) {
    return s.family == Family::F1 ? std::sqrt(6.0 * s.beta) / 3.0 : std::sqrt((s.c - s.a) / 6.0);
}

double am_offset(const RadialProfileSpec& s) {
    return s.family == Family::F1 ? std::sqrt(s.beta) * s.shift : std::sqrt(s.c - s.a) * s.shift;
}

// s = sqrt(2 (2 - C1)) on the curves Gamma+-.
double gamma_scale(const RadialProfileSpec& s) { return std::sqrt(2.0 * (2.0 - s.source.c1)); }

double tan_frequency(const RadialProfileSpec& s) { return std::pow((2.0 - s.source.c1) / 2.0, 0.25); }

double tanh_frequency(const RadialProfileSpec& s) { return 0.5 * std::pow(2.0 - s.source.c1, 0.25); }

// Appends theta_j = (period * j + offset) / freq lying in [lo, hi].
void lattice_in(double period, double offset, double freq, const ThetaInterval& w, std::vector<double>& out) {
    const double jlo = std::ceil((freq * w.lo - offset) / period);
    const double jhi = std::floor((freq * w.hi - offset) / period);
    if (!(jhi - jlo < 1e6)) {
        throw std::domain_error("pole lattice too dense for the requested window");
    }
    for (double j = jlo; j <= jhi; j += 1.0) {
        out.push_back((period * j + offset) / freq);
    }
}

void single_pole_in(double theta, const ThetaInterval& w, std::vector<double>& out) {
    if (theta >= w.lo && theta <= w.hi) {
        out.push_back(theta);
    }
}

struct ProfileValue {
    double f;
    double df;
};

ProfileValue evaluate(const RadialProfileSpec& s, double theta) {
    switch (s.family) {
        case Family::F0:
            return {s.shift, 0.0};
        case Family::F1: {
            const double w = am_frequency(s);
            const elliptic::Modulus mod(s.k);
            const double phi = elliptic::jacobi_am(w * theta + am_offset(s), mod);
            const double sp = std::sin(phi);
            const double dn = std::sqrt(1.0 - mod.parameter() * sp * sp);
            const double g = 0.5 * phi;
            const double sg = std::sin(g);
            const double cg = std::cos(g);
            const double cot = cg / sg;
            return {s.alpha - s.beta * cot * cot, s.beta * cot / (sg * sg) * dn * w};
        }
        case Family::F2: {
            const double t = theta + s.shift;
            return {-2.0 - 6.0 / (t * t), 12.0 / (t * t * t)};
        }
        case Family::F3: {
            const double w = am_frequency(s);
            const elliptic::Modulus mod(s.k);
            const double phi = elliptic::jacobi_am(w * theta + am_offset(s), mod);
            const double sn = std::sin(phi);
            const double cn = std::cos(phi);
            const double dn = std::sqrt(1.0 - mod.parameter() * sn * sn);
            return {s.c - (s.c - s.b) * sn * sn, -2.0 * (s.c - s.b) * sn * cn * dn * w};
        }
        case Family::F4: {
            const double w = am_frequency(s);
            const elliptic::Modulus mod(s.k);
            const double phi = elliptic::jacobi_am(w * theta + am_offset(s), mod);
            const double sn = std::sin(phi);
            const double t = std::tan(phi);
            const double dn = std::sqrt(1.0 - mod.parameter() * sn * sn);
            return {s.a - (s.b - s.a) * t * t, -2.0 * (s.b - s.a) * t * (1.0 + t * t) * dn * w};
        }
        case Family::F5: {
            const double sc = gamma_scale(s);
            const double nu = tan_frequency(s);
            const double t = std::tan(nu * theta + s.shift);
            return {-2.0 - 2.0 * sc - 3.0 * sc * t * t, -6.0 * sc * t * (1.0 + t * t) * nu};
        }
        case Family::F6:
        case Family::F7: {
            const double sc = gamma_scale(s);
            const double amp = tanh_frequency(s);
            const double arg = amp * (kRootEight * theta + s.shift);
            const double t = s.family == Family::F6 ? std::tanh(arg) : 1.0 / std::tanh(arg);
            return {-2.0 + 2.0 * sc - 3.0 * sc * t * t, -6.0 * sc * t * (1.0 - t * t) * amp * kRootEight};
        }
    }
    throw std::logic_error("unknown family");
}

// f alone in long double; parameters stay as stored.
long double value_extended(const RadialProfileSpec& s, long double theta) {
    using L = long double;
    switch (s.family) {
        case Family::F0:
            return s.shift;
        case Family::F1: {
            const L w = std::sqrt(6.0L * s.beta) / 3.0L;
            const L g = elliptic::jacobi_am_extended(w * theta + std::sqrt(L{s.beta}) * s.shift,
                                                     elliptic::Modulus(s.k)) / 2.0L;
            const L cot = std::cos(g) / std::sin(g);
            return s.alpha - s.beta * cot * cot;
        }
        case Family::F2: {
            const L t = theta + s.shift;
            return -2.0L - 6.0L / (t * t);
        }
        case Family::F3:
        case Family::F4: {
            const L spread = L{s.c} - s.a;
            const L phi = elliptic::jacobi_am_extended(std::sqrt(spread / 6.0L) * theta + std::sqrt(spread) * s.shift,
                                                       elliptic::Modulus(s.k));
            if (s.family == Family::F3) {
                const L sn = std::sin(phi);
                return s.c - (L{s.c} - s.b) * sn * sn;
            }
            const L t = std::tan(phi);
            return s.a - (L{s.b} - s.a) * t * t;
        }
        case Family::F5: {
            const L sc = std::sqrt(2.0L * (2.0L - s.source.c1));
            const L t = std::tan(std::pow((2.0L - s.source.c1) / 2.0L, 0.25L) * theta + s.shift);
            return -2.0L - 2.0L * sc - 3.0L * sc * t * t;
        }
        case Family::F6:
        case Family::F7: {
            const L sc = std::sqrt(2.0L * (2.0L - s.source.c1));
            const L arg = std::pow(2.0L - s.source.c1, 0.25L) / 2.0L * (std::pow(8.0L, 0.25L) * theta + s.shift);
            const L t = s.family == Family::F6 ? std::tanh(arg) : 1.0L / std::tanh(arg);
            return -2.0L + 2.0L * sc - 3.0L * sc * t * t;
        }
    }
    throw std::logic_error("unknown family");
}

void require_valid(const RadialProfileSpec& spec, double theta) {
    if (!std::isfinite(theta)) {
        throw std::domain_error("angle must be finite");
    }
    if (!is_valid(spec, theta)) {
        throw std::domain_error(std::string(to_string(spec.family)) + " is not valid at theta = " +
                                std::to_string(theta));
    }
}

FieldSample field_from_profile(const RadialProfileSpec& spec, double kappa, double x, double y) {
    const double r2 = x * x + y * y;
    return {x * kappa / r2, y * kappa / r2, (2.0 * kappa + ode_parameter(spec)) / r2};
}

}  // namespace

std::string_view to_string(Family family) noexcept { return kFamilyNames[static_cast<std::size_t>(family)]; }

std::optional<Family> family_from_string(std::string_view name) noexcept {
    for (std::size_t i = 0; i < kFamilyNames.size(); ++i) {
        if (kFamilyNames[i] == name) {
            return static_cast<Family>(i);
        }
    }
    return std::nullopt;
}

RadialProfileSpec make_profile(Family family, ParameterPoint p, double shift) {
    p.validate();
    if (!std::isfinite(shift)) {
        throw InadmissibleSpec("integration constant must be finite");
    }
    RadialProfileSpec s;
    s.family = family;
    s.source = p;
    s.shift = shift;
    const RegionTag region = cubic::classify(p);

    switch (family) {
        case Family::F0: {
            const double scale = 1.0 + std::abs(shift * shift * shift);
            require_admissible(std::abs(cubic::p3_eval(shift, p)) <= 1e-9 * scale, family, p,
                               "the constant must be a root of P3");
            break;
        }
        case Family::F1: {
            require_admissible(cubic::in_region_I(region), family, p, "requires region I");
            const auto roots = std::get<cubic::OneRealPlusConjugate>(cubic::solve_cubic(p));
            s.alpha = roots.alpha;
            s.m = roots.m;
            s.n = roots.n;
            s.beta = std::hypot(roots.m - roots.alpha, roots.n);
            require_admissible(s.beta > 0.0 && roots.n > 0.0, family, p, "degenerate conjugate pair");
            const double k2 = (s.beta - s.m + s.alpha) / (2.0 * s.beta);
            s.k = std::sqrt(std::clamp(k2, 0.0, 1.0));
            s.big_k = elliptic::ellint_K(elliptic::Modulus(s.k));
            break;
        }
        case Family::F2:
            require_admissible(region == RegionTag::P0, family, p, "requires the point P0 = (2, 8)");
            break;
        case Family::F3:
        case Family::F4: {
            require_admissible(region == RegionTag::II, family, p, "requires region II");
            const auto r = std::get<cubic::ThreeDistinctReal>(cubic::solve_cubic(p));
            auto out = make_profile_from_roots(family, r.a, r.b, r.c, shift);
            out.source = p;
            return out;
        }
        case Family::F5:
            require_admissible(region == RegionTag::GammaPlus, family, p, "requires the curve Gamma+");
            break;
        case Family::F6:
        case Family::F7:
            require_admissible(region == RegionTag::GammaMinus, family, p, "requires the curve Gamma-");
            break;
    }
    return s;
}

RadialProfileSpec make_profile_from_roots(Family family, double a, double b, double c, double shift) {
    if (family != Family::F3 && family != Family::F4) {
        throw InadmissibleSpec("only F3 and F4 are parametrized by three real roots");
    }
    if (!(std::isfinite(a) && std::isfinite(b) && std::isfinite(c) && a < b && b < c)) {
        throw InadmissibleSpec("roots must be finite with a < b < c");
    }
    if (!std::isfinite(shift)) {
        throw InadmissibleSpec("integration constant must be finite");
    }
    const double scale = std::max({1.0, std::abs(a), std::abs(c)});
    if (std::abs(a + b + c + 6.0) > 1e-9 * scale) {
        throw InadmissibleSpec("roots of P3 must sum to -6");
    }
    RadialProfileSpec s;
    s.family = family;
    s.source = {(a * b + b * c + c * a) / 6.0, -a * b * c};
    s.shift = shift;
    s.a = a;
    s.b = b;
    s.c = c;
    s.k = std::sqrt((c - b) / (c - a));
    s.big_k = elliptic::ellint_K(elliptic::Modulus(s.k));
    return s;
}

RadialProfileSpec with_window(RadialProfileSpec spec, ThetaInterval window) {
    if (!(window.lo < window.hi) || !std::isfinite(window.lo) || !std::isfinite(window.hi)) {
        throw std::domain_error("window must be a finite interval with lo < hi");
    }
    spec.window = window;
    return spec;
}

double ode_parameter(const RadialProfileSpec& spec) noexcept {
    if (spec.family == Family::F0) {
        const double v = spec.shift;
        return -(v * v + 4.0 * v) / 2.0;
    }
    return spec.source.c1;
}

std::vector<double> poles(const RadialProfileSpec& s, ThetaInterval w) {
    std::vector<double> out;
    switch (s.family) {
        case Family::F0:
        case Family::F3:
        case Family::F6:
            break;
        case Family::F1:
            lattice_in(4.0 * s.big_k, -am_offset(s), am_frequency(s), w, out);
            break;
        case Family::F4:
            lattice_in(2.0 * s.big_k, s.big_k - am_offset(s), am_frequency(s), w, out);
            break;
        case Family::F2:
            single_pole_in(-s.shift, w, out);
            break;
        case Family::F5:
            lattice_in(kPi, kPi / 2.0 - s.shift, tan_frequency(s), w, out);
            break;
        case Family::F7:
            single_pole_in(-s.shift / kRootEight, w, out);
            break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<ThetaInterval> validity(const RadialProfileSpec& spec) {
    std::vector<ThetaInterval> pieces;
    const ThetaInterval& w = spec.window;
    ThetaInterval current{w.lo, w.hi, w.lo_open, w.hi_open};
    for (double pole : poles(spec, w)) {
        if (pole > current.lo) {
            pieces.push_back({current.lo, pole, current.lo_open, true});
        }
        current.lo = pole;
        current.lo_open = true;
    }
    if (current.lo < current.hi) {
        pieces.push_back(current);
    }
    return pieces;
}

std::optional<ThetaInterval> principal_interval(const RadialProfileSpec& spec) {
    std::optional<ThetaInterval> best;
    double best_distance = std::numeric_limits<double>::infinity();
    for (const auto& piece : validity(spec)) {
        const double d = piece.contains(0.0) ? 0.0 : std::min(std::abs(piece.lo), std::abs(piece.hi));
        if (d < best_distance) {
            best_distance = d;
            best = piece;
        }
    }
    return best;
}

bool is_valid(const RadialProfileSpec& spec, double theta) {
    if (!spec.window.contains(theta)) {
        return false;
    }
    for (double pole : poles(spec, spec.window)) {
        if (std::abs(theta - pole) <= kPoleTolerance * std::max(1.0, std::abs(pole))) {
            return false;
        }
    }
    return true;
}

double eval_f(const RadialProfileSpec& spec, double theta) {
    require_valid(spec, theta);
    return evaluate(spec, theta).f;
}

double eval_df(const RadialProfileSpec& spec, double theta) {
    require_valid(spec, theta);
    return evaluate(spec, theta).df;
}

long double eval_f_extended(const RadialProfileSpec& spec, long double theta) {
    require_valid(spec, static_cast<double>(theta));
    return value_extended(spec, theta);
}

double tilde_theta(double x, double y) {
    if (!std::isfinite(x) || !std::isfinite(y)) {
        throw std::domain_error("point must be finite");
    }
    if (x == 0.0 && y == 0.0) {
        throw std::domain_error("tilde_theta is undefined at the origin");
    }
    if (x > 0.0 && y >= 0.0) {
        return std::atan(y / x);
    }
    if (x <= 0.0 && y > 0.0) {
        return kPi / 2.0 - std::atan(x / y);
    }
    if (x < 0.0 && y <= 0.0) {
        return kPi + std::atan(y / x);
    }
    return 3.0 * kPi / 2.0 - std::atan(x / y);
}

FieldSample eval_field_radial(const RadialProfileSpec& spec, double x, double y, bool extended) {
    if (!std::isfinite(x) || !std::isfinite(y)) {
        throw std::domain_error("point must be finite");
    }
    if (extended) {
        const double th = tilde_theta(x, y);
        return field_from_profile(spec, eval_f(with_window(spec, kFullTurn), th), x, y);
    }
    if (!(x > 0.0)) {
        throw std::domain_error("the non-extended field needs x > 0");
    }
    return field_from_profile(spec, eval_f(spec, std::atan(y / x)), x, y);
}

FieldSample eval_field_reciprocal(const RadialProfileSpec& spec, double x, double y) {
    if (!std::isfinite(x) || !std::isfinite(y)) {
        throw std::domain_error("point must be finite");
    }
    if (y == 0.0) {
        throw std::domain_error("the reciprocal path is undefined on the x-axis");
    }
    return field_from_profile(spec, eval_f(spec, std::atan(x / y)), x, y);
}

double periodicity_residual(double a, double b, double c, int n_periods) {
    const elliptic::Modulus k(std::sqrt((c - b) / (c - a)));
    return kPi * std::sqrt((c - a) / 6.0) - n_periods * elliptic::ellint_K(k);
}

GlobalSolution global_periodic_solve(int n_periods, double seed, double shift) {
    if (n_periods < 1) {
        throw std::domain_error("number of periods must be a positive integer");
    }
    if (!(seed > 0.0 && seed < 1.0)) {
        throw std::domain_error("seed k^2 must lie in (0, 1)");
    }
    if (!std::isfinite(shift)) {
        throw std::domain_error("integration constant must be finite");
    }
    const double big_k = elliptic::ellint_K(elliptic::Modulus(std::sqrt(seed)));
    // Along the path, c - a = L(c) = 3(c + 2)/(1 + seed) and c - b = seed * L.
    const auto spread = [seed](double c) { return 3.0 * (c + 2.0) / (1.0 + seed); };
    const auto residual = [&](double c) {
        return kPi * std::sqrt(spread(c) / 6.0) - n_periods * big_k;
    };

    const double lo = -2.0;
    double hi = -1.0;
    double f_lo = residual(lo);
    double f_hi = residual(hi);
    while (f_hi <= 0.0) {
        hi = -2.0 + 2.0 * (hi + 2.0);
        if (hi > 1e12) {
            throw NoBracketError("no sign change of the periodicity residual along the seed path");
        }
        f_hi = residual(hi);
    }
    boost::uintmax_t max_iter = 200;
    const auto tol = boost::math::tools::eps_tolerance<double>(std::numeric_limits<double>::digits - 3);
    const auto bracket = boost::math::tools::toms748_solve(residual, lo, hi, f_lo, f_hi, tol, max_iter);
    const double c = 0.5 * (bracket.first + bracket.second);

    GlobalSolution sol;
    sol.n_periods = n_periods;
    sol.seed = seed;
    const double spread_c = spread(c);
    sol.c = c;
    sol.a = c - spread_c;
    sol.b = c - seed * spread_c;
    sol.source = {(sol.a * sol.b + sol.b * sol.c + sol.c * sol.a) / 6.0, -sol.a * sol.b * sol.c};
    sol.shift = shift;
    sol.condition_residual = periodicity_residual(sol.a, sol.b, sol.c, n_periods);
    sol.flux = flux(sol);
    sol.flux_condition = 4.0 + sol.flux / kPi < static_cast<double>(n_periods) * n_periods;
    return sol;
}

RadialProfileSpec global_profile(const GlobalSolution& sol) {
    return with_window(make_profile_from_roots(Family::F3, sol.a, sol.b, sol.c, sol.shift), kFullTurn);
}

double flux(const RadialProfileSpec& spec) {
    const RadialProfileSpec turn = with_window(spec, kFullTurn);
    if (!poles(turn, kFullTurn).empty()) {
        throw std::domain_error("flux needs a profile without poles on [0, 2pi]");
    }
    if (turn.family == Family::F0) {
        return 2.0 * kPi * turn.shift;
    }
    double error = 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        [&turn](double t) { return evaluate(turn, t).f; }, 0.0, 2.0 * kPi, 15, 1e-14, &error);
}

double flux(const GlobalSolution& sol) { return flux(global_profile(sol)); }

}  // namespace jhflow::radial
