#include "jhflow/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace jhflow::verify {

namespace {

using radial::Family;
using radial::RadialProfileSpec;

constexpr int kStencil = 5;
using Weights = std::array<std::array<long double, kStencil>, kStencil>;  // [order][node]

// Fornberg's recursion for finite-difference weights at z on the given nodes.
Weights fornberg(long double z, const std::array<long double, kStencil>& x) {
    Weights c{};
    const int m = kStencil - 1;
    long double c1 = 1;
    long double c4 = x[0] - z;
    c[0][0] = 1;
    for (int i = 1; i < kStencil; ++i) {
        const int mn = std::min(i, m);
        long double c2 = 1;
        const long double c5 = c4;
        c4 = x[i] - z;
        for (int j = 0; j < i; ++j) {
            const long double c3 = x[i] - x[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k) {
                    c[k][i] = c1 * (k * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                }
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for (int k = mn; k >= 1; --k) {
                c[k][j] = (c4 * c[k][j] - k * c[k - 1][j]) / c3;
            }
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    return c;
}

const Weights& one_sided_weights(int direction) {
    static const Weights forward = fornberg(0, {0, 1, 2, 3, 4});
    static const Weights backward = fornberg(0, {0, -1, -2, -3, -4});
    return direction > 0 ? forward : backward;
}

// Derivative of the given order at x0 from the side `direction`, Richardson
// refined over steps shrinking by kRatio. The error of one five-point stencil
// expands in powers h^(5 - order), h^(6 - order), ... The best entry of the
// table is chosen by its own error estimate.
template <class F>
long double one_sided_derivative(const F& f, long double x0, int order, int direction, long double h0) {
    if (order == 0) {
        return f(x0);
    }
    constexpr int kLevels = 12;
    constexpr long double kRatio = 1.4L;
    const Weights& w = one_sided_weights(direction);
    std::array<std::array<long double, kLevels>, kLevels> table{};
    long double best = 0;
    long double best_err = INFINITY;
    long double h = h0;
    for (int i = 0; i < kLevels; ++i, h /= kRatio) {
        long double acc = 0;
        for (int node = 0; node < kStencil; ++node) {
            acc += w[order][node] * f(x0 + direction * node * h);
        }
        table[i][0] = acc / std::pow(h, order);
        if (i == 0) {
            best = table[0][0];
        }
        for (int m = 1; m <= i; ++m) {
            const long double factor = std::pow(kRatio, kStencil - order + m - 1) - 1;
            table[i][m] = table[i][m - 1] + (table[i][m - 1] - table[i - 1][m - 1]) / factor;
            const long double err =
                std::max(std::abs(table[i][m] - table[i][m - 1]), std::abs(table[i][m] - table[i - 1][m - 1]));
            if (err <= best_err) {
                best_err = err;
                best = table[i][m];
            }
        }
    }
    return best;
}

double central_first(const std::array<double, 5>& s, double h) {
    return (-s[4] + 8.0 * s[3] - 8.0 * s[1] + s[0]) / (12.0 * h);
}

double central_second(const std::array<double, 5>& s, double h) {
    return (-s[4] + 16.0 * s[3] - 30.0 * s[2] + 16.0 * s[1] - s[0]) / (12.0 * h * h);
}

// Profile values at theta + {-2, -1, 0, 1, 2} * h.
std::array<double, 5> profile_stencil(const RadialProfileSpec& spec, double theta, double h) {
    std::array<double, 5> s{};
    for (int i = 0; i < 5; ++i) {
        s[i] = radial::eval_f(spec, theta + (i - 2) * h);
    }
    return s;
}

void require_step(double step) {
    if (!(step > 0.0) || !std::isfinite(step)) {
        throw std::domain_error("finite-difference step must be positive");
    }
}

double random_in(std::mt19937_64& rng, double lo, double hi) {
    // Explicit mapping so that samples do not depend on the library's distribution.
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
}

}  // namespace

FieldEvaluator radial_evaluator(const RadialProfileSpec& spec, bool extended) {
    FieldEvaluator fe;
    fe.eval = [spec, extended](double x, double y) { return radial::eval_field_radial(spec, x, y, extended); };
    if (extended) {
        const auto turn = radial::with_window(spec, radial::kFullTurn);
        fe.contains = [turn](double x, double y) {
            return (x != 0.0 || y != 0.0) && radial::is_valid(turn, radial::tilde_theta(x, y));
        };
    } else {
        fe.contains = [spec](double x, double y) { return x > 0.0 && radial::is_valid(spec, std::atan(y / x)); };
    }
    return fe;
}

FieldEvaluator reciprocal_evaluator(const RadialProfileSpec& spec) {
    FieldEvaluator fe;
    fe.eval = [spec](double x, double y) { return radial::eval_field_reciprocal(spec, x, y); };
    fe.contains = [spec](double x, double y) { return y != 0.0 && radial::is_valid(spec, std::atan(x / y)); };
    return fe;
}

FieldEvaluator nonradial_evaluator(const nonradial::NonRadialSpec& spec) {
    FieldEvaluator fe;
    fe.c0 = spec.c0;
    fe.eval = [spec](double x, double y) { return nonradial::nonradial_field(spec, x, y); };
    const auto windows = nonradial::pole_free_windows(spec);
    fe.contains = [windows](double x, double y) {
        if (!(x > 0.0)) {
            return false;
        }
        const double theta = std::atan(y / x);
        return std::any_of(windows.begin(), windows.end(), [theta](const auto& w) { return w.contains(theta); });
    };
    return fe;
}

FieldEvaluator landau_evaluator(double radial_coeff, double swirl) {
    FieldEvaluator fe;
    fe.c0 = swirl;
    fe.eval = [radial_coeff, swirl](double x, double y) { return nonradial::landau_field(radial_coeff, swirl, x, y); };
    fe.contains = [](double x, double y) { return x != 0.0 || y != 0.0; };
    return fe;
}

FieldEvaluator scale_u(FieldEvaluator fe, double factor) {
    auto inner = std::move(fe.eval);
    fe.eval = [inner = std::move(inner), factor](double x, double y) {
        FieldSample s = inner(x, y);
        s.u *= factor;
        return s;
    };
    return fe;
}

double ResidualReport::max_normalized() const noexcept {
    return std::max({std::abs(momentum_x), std::abs(momentum_y), std::abs(divergence)}) / normalization;
}

double default_step(double x, double y) noexcept { return 1e-3 * std::hypot(x, y); }

ResidualReport pde_residual(const FieldEvaluator& fe, double x, double y) {
    return pde_residual(fe, x, y, default_step(x, y));
}

ResidualReport pde_residual(const FieldEvaluator& fe, double x, double y, double step) {
    require_step(step);
    std::array<FieldSample, 5> sx{};
    std::array<FieldSample, 5> sy{};
    for (int i = 0; i < 5; ++i) {
        const double off = (i - 2) * step;
        if (!fe.contains(x + off, y) || !fe.contains(x, y + off)) {
            throw StencilError("finite-difference stencil leaves the field's domain at (" + std::to_string(x) +
                               ", " + std::to_string(y) + ")");
        }
        sx[i] = fe.eval(x + off, y);
        sy[i] = i == 2 ? sx[2] : fe.eval(x, y + off);
    }
    const auto pick = [](const std::array<FieldSample, 5>& s, double FieldSample::*m) {
        return std::array<double, 5>{s[0].*m, s[1].*m, s[2].*m, s[3].*m, s[4].*m};
    };
    const auto ux = pick(sx, &FieldSample::u);
    const auto vx = pick(sx, &FieldSample::v);
    const auto px = pick(sx, &FieldSample::p);
    const auto uy = pick(sy, &FieldSample::u);
    const auto vy = pick(sy, &FieldSample::v);
    const auto py = pick(sy, &FieldSample::p);

    const FieldSample c = sx[2];
    const double u_x = central_first(ux, step);
    const double u_y = central_first(uy, step);
    const double v_x = central_first(vx, step);
    const double v_y = central_first(vy, step);
    const double lap_u = central_second(ux, step) + central_second(uy, step);
    const double lap_v = central_second(vx, step) + central_second(vy, step);

    ResidualReport r;
    r.momentum_x = -lap_u + c.u * u_x + c.v * u_y + central_first(px, step);
    r.momentum_y = -lap_v + c.u * v_x + c.v * v_y + central_first(py, step);
    r.divergence = u_x + v_y;
    r.constraint = x * c.v - y * c.u - fe.c0;
    r.normalization = std::max(1.0, (c.u * c.u + c.v * c.v) / std::hypot(x, y));
    return r;
}

double angular_ode_residual(const RadialProfileSpec& spec, double theta, double step) {
    if (spec.family == Family::F0) {
        throw std::domain_error("the angular ODE check applies to F1..F7; constants are checked by the PDE");
    }
    require_step(step);
    const auto s = profile_stencil(spec, theta, step);
    const double f = s[2];
    return std::abs(central_second(s, step) + f * f + 4.0 * f + 2.0 * spec.source.c1);
}

double first_integral_residual(const RadialProfileSpec& spec, double theta, double step) {
    require_step(step);
    const auto s = profile_stencil(spec, theta, step);
    const double f = s[2];
    const double df = central_first(s, step);
    const double c1 = spec.source.c1;
    const double c2 = spec.source.c2;
    return std::abs(df * df + 2.0 / 3.0 * f * f * f + 4.0 * f * f + 4.0 * c1 * f + 2.0 / 3.0 * c2);
}

double ode_oracle_compare(const RadialProfileSpec& spec, double theta0, double theta1, double step) {
    require_step(step);
    if (!(theta0 < theta1)) {
        throw std::domain_error("oracle span needs theta0 < theta1");
    }
    if (!radial::is_valid(spec, theta0) || !radial::is_valid(spec, theta1) ||
        !radial::poles(spec, {theta0, theta1, false, false}).empty()) {
        throw std::domain_error("oracle span must lie inside one validity interval");
    }
    const double c1 = radial::ode_parameter(spec);
    const auto accel = [c1](double f) { return -(f * f + 4.0 * f) - 2.0 * c1; };

    double f = radial::eval_f(spec, theta0);
    double df = radial::eval_df(spec, theta0);
    const auto steps = static_cast<long>(std::ceil((theta1 - theta0) / step - 1e-9));
    const double h = (theta1 - theta0) / static_cast<double>(steps);
    double worst = 0.0;
    for (long i = 1; i <= steps; ++i) {
        const double k1f = df;
        const double k1v = accel(f);
        const double k2f = df + 0.5 * h * k1v;
        const double k2v = accel(f + 0.5 * h * k1f);
        const double k3f = df + 0.5 * h * k2v;
        const double k3v = accel(f + 0.5 * h * k2f);
        const double k4f = df + h * k3v;
        const double k4v = accel(f + h * k3f);
        f += h / 6.0 * (k1f + 2.0 * k2f + 2.0 * k3f + k4f);
        df += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        if (!(std::abs(f) <= 1e12)) {
            throw std::overflow_error("RK4 oracle blew up");
        }
        const double theta = i == steps ? theta1 : theta0 + i * h;
        worst = std::max(worst, std::abs(radial::eval_f(spec, theta) - f));
    }
    return worst;
}

std::vector<RayMismatch> smoothness_across_ray(const RadialProfileSpec& spec, int order) {
    if (order < 0 || order > 4) {
        throw std::domain_error("derivative order must be in 0..4");
    }
    const auto turn = radial::with_window(spec, radial::kFullTurn);
    const auto f = [&turn](long double t) { return radial::eval_f_extended(turn, t); };
    constexpr long double kFirstStep = 0.1L;
    constexpr long double kTwoPi = 2 * std::numbers::pi_v<long double>;
    std::vector<RayMismatch> out;
    for (int j = 0; j <= order; ++j) {
        RayMismatch m;
        m.order = j;
        if (turn.family == radial::Family::F0) {
            m.at_zero = m.at_two_pi = j == 0 ? turn.shift : 0.0;
            m.scale = std::max(1.0, std::abs(m.at_zero));
            out.push_back(m);
            continue;
        }
        m.at_zero = static_cast<double>(one_sided_derivative(f, 0.0L, j, +1, kFirstStep));
        m.at_two_pi = static_cast<double>(one_sided_derivative(f, kTwoPi, j, -1, kFirstStep));
        m.mismatch = std::abs(m.at_zero - m.at_two_pi);
        m.scale = std::max({1.0, std::abs(m.at_zero), std::abs(m.at_two_pi)});
        out.push_back(m);
    }
    return out;
}

std::vector<RayMismatch> smoothness_across_ray(const radial::GlobalSolution& sol, int order) {
    return smoothness_across_ray(radial::global_profile(sol), order);
}

double lienard_residual(const nonradial::NonRadialSpec& spec, double theta) {
    nonradial::validate(spec);
    if (spec.variant == nonradial::Variant::NumericLienard) {
        throw std::domain_error("the numeric variant has no closed-form derivatives");
    }
    const auto h = nonradial::angular_profile(spec, theta);
    return std::abs(h.d2h - spec.c0 * h.dh + h.h * h.h + 2.0 * (spec.ctilde1 + 2.0) * h.h);
}

double constraint_check(const FieldEvaluator& fe, double c0_expected, double x, double y) {
    if (!fe.contains(x, y)) {
        throw std::domain_error("point outside the field's domain");
    }
    const FieldSample s = fe.eval(x, y);
    return std::abs(x * s.v - y * s.u - c0_expected);
}

double scaling_check(const FieldEvaluator& fe, double lambda, double x, double y) {
    if (!(lambda > 0.0) || !fe.contains(x, y) || !fe.contains(lambda * x, lambda * y)) {
        throw std::domain_error("scaling check needs both points inside the domain and lambda > 0");
    }
    const FieldSample a = fe.eval(x, y);
    const FieldSample b = fe.eval(lambda * x, lambda * y);
    return std::max({std::abs(lambda * b.u - a.u), std::abs(lambda * b.v - a.v),
                     std::abs(lambda * lambda * b.p - a.p)});
}

std::vector<Point> interior_samples(const RadialProfileSpec& spec, bool extended, int count, std::uint64_t seed) {
    std::vector<Point> pts;
    ThetaInterval band{0.0, 2.0 * radial::kPi};
    if (!extended) {
        const auto piece = radial::principal_interval(spec);
        if (!piece) {
            return pts;
        }
        band = *piece;
        const double margin = 0.05 * band.width();
        band.lo += margin;
        band.hi -= margin;
    }
    std::mt19937_64 rng(seed);
    for (int i = 0; i < count; ++i) {
        const double r = random_in(rng, 0.5, 2.0);
        const double t = random_in(rng, band.lo, band.hi);
        pts.emplace_back(r * std::cos(t), r * std::sin(t));
    }
    return pts;
}

std::vector<Point> interior_samples(const nonradial::NonRadialSpec& spec, int count, std::uint64_t seed) {
    std::vector<Point> pts;
    const auto windows = nonradial::pole_free_windows(spec);
    const auto widest = std::max_element(windows.begin(), windows.end(),
                                         [](const auto& a, const auto& b) { return a.width() < b.width(); });
    if (widest == windows.end()) {
        return pts;
    }
    const double margin = 0.05 * widest->width();
    std::mt19937_64 rng(seed);
    for (int i = 0; i < count; ++i) {
        const double r = random_in(rng, 0.5, 2.0);
        const double t = random_in(rng, widest->lo + margin, widest->hi - margin);
        pts.emplace_back(r * std::cos(t), r * std::sin(t));
    }
    return pts;
}

SweepSummary sweep(const FieldEvaluator& fe, const std::vector<Point>& points) {
    SweepSummary s;
    double total = 0.0;
    for (const auto& [x, y] : points) {
        const ResidualReport r = pde_residual(fe, x, y);
        const double res = r.max_normalized();
        s.max_residual = std::max(s.max_residual, res);
        total += res;
        s.max_constraint = std::max(s.max_constraint, std::abs(r.constraint));
        for (double lambda : {0.5, 2.0, 10.0}) {
            if (fe.contains(lambda * x, lambda * y)) {
                s.max_scaling = std::max(s.max_scaling, scaling_check(fe, lambda, x, y));
            }
        }
        ++s.points;
    }
    s.mean_residual = s.points ? total / static_cast<double>(s.points) : 0.0;
    return s;
}

}  // namespace jhflow::verify
