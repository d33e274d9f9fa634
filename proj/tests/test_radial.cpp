#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fixtures.hpp"
#include "jhflow/elliptic.hpp"
#include "jhflow/radial.hpp"

using namespace jhflow;
using namespace jhflow::radial;
using jhflow::testing::radial_fixtures;
using jhflow::testing::Uniform;

namespace {
constexpr double kTwoPi = 2 * std::numbers::pi;
}

TEST_CASE("closed-form values") {
    CHECK(eval_f(make_profile(Family::F2, {2.0, 8.0}, 1.0), 0.0) == -8.0);
    const auto f0 = make_profile(Family::F0, {0.0, 0.0}, -6.0);
    for (double t : {-1.2, 0.0, 0.9}) CHECK(eval_f(f0, t) == -6.0);
    // f5 peaks at the simple root -2 - 2 sqrt(2 (2 - C1)) where tan vanishes.
    CHECK(eval_f(make_profile(Family::F5, {0.0, 0.0}, 0.0), 0.0) == doctest::Approx(-6.0).epsilon(1e-15));
    // f6 starts from the simple root -2 + 2s where tanh vanishes.
    CHECK(eval_f(make_profile(Family::F6, {0.0, -32.0}, 0.0), 0.0) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("admissibility follows the region of the source point") {
    CHECK_THROWS_AS(make_profile(Family::F2, {2.0, 7.0}, 0.0), InadmissibleSpec);
    CHECK_THROWS_AS(make_profile(Family::F3, {3.0, 5.0}, 0.0), InadmissibleSpec);
    CHECK_THROWS_AS(make_profile(Family::F5, {0.0, -32.0}, 0.0), InadmissibleSpec);
    CHECK_THROWS_AS(make_profile(Family::F6, {0.0, 0.0}, 0.0), InadmissibleSpec);
    CHECK_THROWS_AS(make_profile(Family::F1, {-1.5, -14.0}, 0.0), InadmissibleSpec);
    CHECK_THROWS_AS(make_profile(Family::F0, {0.0, 0.0}, 1.0), InadmissibleSpec);
    CHECK_NOTHROW(make_profile(Family::F1, {2.0, 3.0}, 0.0));  // Gamma0 is part of region I
    CHECK_NOTHROW(make_profile(Family::F1, {0.0, 5.0}, 0.0));  // I2
    CHECK_THROWS_AS(make_profile_from_roots(Family::F3, -7.0, -1.0, 3.0, 0.0), InadmissibleSpec);
    for (auto f : {Family::F0, Family::F1, Family::F2, Family::F3, Family::F4, Family::F5, Family::F6, Family::F7}) {
        CHECK(family_from_string(to_string(f)) == f);
    }
}

TEST_CASE("derived constants of F1 and F3") {
    const auto f3 = make_profile(Family::F3, {-1.5, -14.0}, 0.0);
    CHECK(f3.a == doctest::Approx(-7.0));
    CHECK(f3.b == doctest::Approx(-1.0));
    CHECK(f3.c == doctest::Approx(2.0));
    CHECK(f3.k == doctest::Approx(std::sqrt(3.0 / 9.0)).epsilon(1e-14));

    const auto f1 = make_profile(Family::F1, {3.0, 5.0}, 0.0);
    CHECK(f1.beta == doctest::Approx(std::hypot(f1.alpha - f1.m, f1.n)).epsilon(1e-14));
    CHECK(f1.k * f1.k == doctest::Approx((f1.beta - f1.m + f1.alpha) / (2 * f1.beta)).epsilon(1e-14));
    CHECK(f1.k < 1.0);
}

TEST_CASE("validity windows") {
    const auto f2 = make_profile(Family::F2, {2.0, 8.0}, 0.0);
    const auto pieces = validity(f2);
    REQUIRE(pieces.size() == 2);
    CHECK(pieces[0].hi == 0.0);
    CHECK(pieces[1].lo == 0.0);
    CHECK_FALSE(is_valid(f2, 0.0));
    CHECK_THROWS_AS(eval_f(f2, 0.0), std::domain_error);

    CHECK(validity(make_profile(Family::F0, {0.0, 0.0}, 0.0)).size() == 1);

    // tan pole where theta + C = pi/2 (the quarter-power factor is 1 at C1 = 0).
    const auto f5 = make_profile(Family::F5, {0.0, 0.0}, 0.5);
    const auto f5_poles = poles(f5, f5.window);
    REQUIRE(f5_poles.size() == 1);
    CHECK(f5_poles[0] == doctest::Approx(std::numbers::pi / 2 - 0.5).epsilon(1e-15));
    const auto principal = principal_interval(f5);
    REQUIRE(principal.has_value());
    CHECK(principal->contains(0.0));
    CHECK(principal->hi == f5_poles[0]);

    // coth pole at theta = -C / 8^(1/4) with quarter-power factor 1 at C1 = 0.
    const auto f7 = make_profile(Family::F7, {0.0, -32.0}, 2.0);
    const auto f7_poles = poles(f7, f7.window);
    REQUIRE(f7_poles.size() == 1);
    CHECK(f7_poles[0] == doctest::Approx(-2.0 / std::pow(8.0, 0.25)).epsilon(1e-15));

    SUBCASE("profiles are finite between poles and large next to them") {
        for (const auto& fx : radial_fixtures()) {
            const auto all = poles(fx.spec, fx.spec.window);
            for (const auto& piece : validity(fx.spec)) {
                for (int i = 1; i < 50; ++i) {
                    const double t = piece.lo + piece.width() * i / 50.0;
                    CHECK(std::isfinite(eval_f(fx.spec, t)));
                }
            }
            for (double pole : all) {
                const double beside = is_valid(fx.spec, pole + 1e-4) ? pole + 1e-4 : pole - 1e-4;
                CHECK(std::abs(eval_f(fx.spec, beside)) > 1e5);
            }
        }
    }
}

TEST_CASE("range confinement") {
    const auto f3 = make_profile(Family::F3, {-1.5, -14.0}, 0.3);
    const auto f4 = make_profile(Family::F4, {-1.5, -14.0}, 0.0);
    const auto f1 = make_profile(Family::F1, {3.0, 5.0}, 0.7);
    for (int i = -99; i < 100; ++i) {
        const double t = 1.5 * i / 100.0;
        const double v3 = eval_f(f3, t);
        CHECK(v3 >= f3.b - 1e-12);
        CHECK(v3 <= f3.c + 1e-12);
        if (is_valid(f4, t)) CHECK(eval_f(f4, t) <= f4.a + 1e-12);
        if (is_valid(f1, t)) CHECK(eval_f(f1, t) <= f1.alpha + 1e-12);
    }
}

TEST_CASE("analytic derivative agrees with central differences") {
    for (const auto& fx : radial_fixtures()) {
        for (int i = 0; i <= 10; ++i) {
            const double t = fx.span_start + 0.1 * i;
            const double h = 1e-5;
            const double central = (eval_f(fx.spec, t + h) - eval_f(fx.spec, t - h)) / (2 * h);
            CHECK(eval_df(fx.spec, t) == doctest::Approx(central).epsilon(1e-7).scale(1.0));
        }
    }
}

TEST_CASE("long double evaluation agrees") {
    for (const auto& fx : radial_fixtures()) {
        for (double t : {0.1, 0.35}) {
            const double plain = eval_f(fx.spec, fx.span_start + t);
            const auto ext = static_cast<double>(eval_f_extended(fx.spec, fx.span_start + t));
            CHECK(ext == doctest::Approx(plain).epsilon(1e-12));
        }
    }
}

TEST_CASE("auxiliary angle") {
    CHECK(tilde_theta(1.0, 0.0) == 0.0);
    CHECK(tilde_theta(0.0, 1.0) == doctest::Approx(std::numbers::pi / 2).epsilon(1e-16));
    CHECK(tilde_theta(-1.0, -1.0) == doctest::Approx(5 * std::numbers::pi / 4).epsilon(1e-16));
    CHECK(tilde_theta(-1.0, 0.0) == doctest::Approx(std::numbers::pi).epsilon(1e-16));
    CHECK(tilde_theta(0.0, -1.0) == doctest::Approx(3 * std::numbers::pi / 2).epsilon(1e-16));
    CHECK(tilde_theta(0.5, 0.5) == doctest::Approx(std::atan(1.0)).epsilon(1e-16));
    CHECK_THROWS_AS(tilde_theta(0.0, 0.0), std::domain_error);
    // Continuous across the axes and approaching 2 pi below the positive x-axis.
    for (double phi = 0.01; phi < kTwoPi; phi += 0.01) {
        CHECK(tilde_theta(std::cos(phi), std::sin(phi)) == doctest::Approx(phi).epsilon(1e-13));
    }
}

TEST_CASE("radial fields") {
    SUBCASE("constant profiles give the zero-swirl Landau law") {
        for (double c : {0.0, -6.0}) {
            const auto f0 = make_profile(Family::F0, {0.0, 0.0}, c);
            const auto s = eval_field_radial(f0, 1.0, 0.0);
            CHECK(s.u == c);
            CHECK(s.v == 0.0);
            CHECK(s.p == doctest::Approx(-c * c / 2));
            const auto q = eval_field_radial(f0, 0.6, -1.7);
            const double r2 = 0.6 * 0.6 + 1.7 * 1.7;
            CHECK(q.u == doctest::Approx(c * 0.6 / r2).epsilon(1e-15));
            CHECK(q.v == doctest::Approx(-c * 1.7 / r2).epsilon(1e-15));
        }
        // At a double root the pressure reduces to (2C + C1)/r^2.
        const auto triple = make_profile(Family::F0, {2.0, 8.0}, -2.0);
        CHECK(eval_field_radial(triple, 1.0, 0.0).p == doctest::Approx(2 * -2.0 + 2.0));
    }

    SUBCASE("radiality holds exactly") {
        Uniform draw(5);
        for (const auto& fx : radial_fixtures()) {
            const auto piece = *principal_interval(fx.spec);
            for (int i = 0; i < 50; ++i) {
                const double t = draw(piece.lo + 0.05 * piece.width(), piece.hi - 0.05 * piece.width());
                const double r = draw(0.3, 3.0);
                const double x = r * std::cos(t), y = r * std::sin(t);
                const auto s = eval_field_radial(fx.spec, x, y);
                // Zero up to the rounding of x * (y f / r^2) against y * (x f / r^2).
                CHECK(std::abs(x * s.v - y * s.u) <= 4 * std::numeric_limits<double>::epsilon() * std::abs(x * s.v));
            }
        }
    }

    SUBCASE("domains") {
        const auto f3 = make_profile(Family::F3, {-1.5, -14.0}, 0.0);
        CHECK_THROWS_AS(eval_field_radial(f3, -1.0, 0.5), std::domain_error);
        CHECK_THROWS_AS(eval_field_radial(f3, 0.0, 0.0, true), std::domain_error);
        CHECK_NOTHROW(eval_field_radial(f3, -1.0, 0.5, true));
        CHECK_THROWS_AS(eval_field_reciprocal(f3, 1.0, 0.0), std::domain_error);
    }

    SUBCASE("reciprocal path equals the radial path with a shifted constant") {
        const double c = 1.0;
        const auto f2 = make_profile(Family::F2, {2.0, 8.0}, c);
        for (auto [x, y] : {std::pair{1.0, 1.0}, {0.4, 1.3}, {2.0, 0.7}}) {
            const double sgn = (x / y) > 0 ? 1.0 : -1.0;
            const auto shifted = make_profile(Family::F2, {2.0, 8.0}, -c - sgn * std::numbers::pi / 2);
            const auto a = eval_field_reciprocal(f2, x, y);
            const auto b = eval_field_radial(shifted, x, y);
            CHECK(a.u == doctest::Approx(b.u).epsilon(1e-13));
            CHECK(a.v == doctest::Approx(b.v).epsilon(1e-13));
            CHECK(a.p == doctest::Approx(b.p).epsilon(1e-13));
        }
        const auto f0 = make_profile(Family::F0, {0.0, 0.0}, -6.0);
        const auto r = eval_field_reciprocal(f0, 0.7, 0.3);
        const auto d = eval_field_radial(f0, 0.7, 0.3);
        CHECK(r.u == d.u);
        CHECK(r.v == d.v);
        CHECK(r.p == d.p);
    }
}

TEST_CASE("global periodic solutions") {
    SUBCASE("n = 3 against the closed-form root of the periodicity condition") {
        const auto sol = global_periodic_solve(3, 0.5);
        const double big_k = elliptic::ellint_K(elliptic::Modulus(std::sqrt(0.5)));
        const double spread = 6.0 * 9.0 * big_k * big_k / (std::numbers::pi * std::numbers::pi);
        const double c = spread * 1.5 / 3.0 - 2.0;
        CHECK(std::abs(sol.condition_residual) < 1e-10);
        CHECK(sol.c == doctest::Approx(c).epsilon(1e-13));
        CHECK(sol.c - sol.a == doctest::Approx(spread).epsilon(1e-13));
        CHECK(sol.a + sol.b + sol.c == doctest::Approx(-6.0).epsilon(1e-14));
        CHECK(sol.a < sol.b);
        CHECK(sol.b < sol.c);
        CHECK((sol.c - sol.b) / (sol.c - sol.a) == doctest::Approx(0.5).epsilon(1e-14));
        CHECK(sol.flux_condition);
        CHECK(4 + sol.flux / std::numbers::pi < 9);

        // The source point lies in region II and its cubic has exactly these roots.
        const auto roots = cubic::real_roots(cubic::solve_cubic(sol.source));
        REQUIRE(roots.size() == 3);
        CHECK(roots[0] == doctest::Approx(sol.a).epsilon(1e-10));
        CHECK(roots[1] == doctest::Approx(sol.b).epsilon(1e-10));
        CHECK(roots[2] == doctest::Approx(sol.c).epsilon(1e-10));
    }

    SUBCASE("profile has period 2 pi / n") {
        for (int n : {1, 2, 3, 5}) {
            const auto sol = global_periodic_solve(n, 0.3, 0.2);
            const auto spec = global_profile(sol);
            for (double t : {0.0, 0.1, 0.9, 2.0}) {
                if (t + kTwoPi / n > kTwoPi) continue;
                CHECK(eval_f(spec, t + kTwoPi / n) == doctest::Approx(eval_f(spec, t)).epsilon(1e-11).scale(1.0));
            }
        }
    }

    SUBCASE("small modulus limit") {
        for (int n : {1, 2, 4}) {
            const auto sol = global_periodic_solve(n, 1e-10);
            CHECK(sol.c - sol.a == doctest::Approx(1.5 * n * n).epsilon(1e-8));
        }
    }

    SUBCASE("n = 1 reports the flux inequality without failing") {
        const auto sol = global_periodic_solve(1);
        CHECK(std::abs(sol.condition_residual) < 1e-10);
        CHECK(sol.flux_condition == (4 + sol.flux / std::numbers::pi < 1));
    }

    SUBCASE("invalid inputs") {
        CHECK_THROWS_AS(global_periodic_solve(0), std::domain_error);
        CHECK_THROWS_AS(global_periodic_solve(3, 1.0), std::domain_error);
        CHECK_THROWS_AS(global_periodic_solve(3, 0.0), std::domain_error);
    }
}

TEST_CASE("flux") {
    CHECK(flux(make_profile(Family::F0, {0.0, 0.0}, -6.0)) == doctest::Approx(-12 * std::numbers::pi).epsilon(1e-15));
    CHECK_THROWS_AS(flux(make_profile(Family::F2, {2.0, 8.0}, -1.0)), std::domain_error);

    const auto sol = global_periodic_solve(3, 0.5);
    const auto spec = global_profile(sol);
    // The midpoint rule converges spectrally for smooth periodic integrands.
    constexpr int kPoints = 1'000'000;
    const double h = kTwoPi / kPoints;
    long double sum = 0.0L;
    for (int i = 0; i < kPoints; ++i) sum += eval_f(spec, (i + 0.5) * h);
    const double riemann = static_cast<double>(sum) * h;
    CHECK(std::abs(sol.flux - riemann) < 1e-8);
    CHECK(std::abs(flux(sol) - sol.flux) == 0.0);
}
