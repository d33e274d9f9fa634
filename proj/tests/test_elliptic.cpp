#include <doctest.h>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>

#include "fixtures.hpp"
#include "jhflow/elliptic.hpp"

using namespace jhflow::elliptic;
using jhflow::testing::Uniform;

namespace {

constexpr double kPi = std::numbers::pi;

/// The defining integral of F, by quadrature.
double quadrature_F(double phi, double k) {
    auto integrand = [k](double t) { return 1.0 / std::sqrt(1.0 - k * k * std::sin(t) * std::sin(t)); };
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, 0.0, phi, 6, 1e-13);
}

/// Inverse of wp on the real branch: tau = integral from wp to infinity of
/// dt / sqrt(4 t^3 - g3). With t = e + s^2, e the real root of 4 t^3 - g3, the
/// integrand becomes 1 / sqrt(t^2 + e t + e^2) and loses its endpoint singularity.
double quadrature_wp_inverse(double value, double g3) {
    const double e = std::cbrt(g3 / 4);
    boost::math::quadrature::exp_sinh<double> integrator;
    const double s0 = std::sqrt(std::max(0.0, value - e));
    auto integrand = [=](double u) {
        const double s = s0 + u;
        const double t = e + s * s;
        return 1.0 / std::sqrt(t * t + e * t + e * e);
    };
    return integrator.integrate(integrand, 0.0, std::numeric_limits<double>::infinity());
}

}  // namespace

TEST_CASE("modulus rejects k outside [0, 1)") {
    CHECK_NOTHROW(Modulus(0.0));
    CHECK_NOTHROW(Modulus(0.999));
    CHECK_THROWS_AS(Modulus(1.0), std::domain_error);
    CHECK_THROWS_AS(Modulus(1.0000001), std::domain_error);
    CHECK_THROWS_AS(Modulus(-0.1), std::domain_error);
    CHECK_THROWS_AS(Modulus(std::nan("")), std::domain_error);
}

TEST_CASE("incomplete integral F") {
    CHECK(ellint_F(0.7, Modulus(0.0)) == doctest::Approx(0.7).epsilon(1e-15));
    CHECK(ellint_F(kPi / 2, Modulus(0.3)) == doctest::Approx(ellint_K(Modulus(0.3))).epsilon(1e-14));

    SUBCASE("matches quadrature of the defining integral") {
        const double f = ellint_F(0.9, Modulus(0.5));
        CHECK(std::abs(f - quadrature_F(0.9, 0.5)) < 1e-12 * f);
        Uniform draw(11);
        for (int i = 0; i < 50; ++i) {
            const double phi = draw(-1.5, 1.5);
            const double k = draw(0.0, 0.95);
            const double ref = quadrature_F(phi, k);
            CHECK(std::abs(ellint_F(phi, Modulus(k)) - ref) < 1e-12 * std::max(1.0, std::abs(ref)));
        }
    }

    SUBCASE("odd and quasi-periodic in phi") {
        const Modulus k(0.8);
        CHECK(ellint_F(-1.2, k) == doctest::Approx(-ellint_F(1.2, k)).epsilon(1e-15));
        CHECK(ellint_F(1.2 + kPi, k) == doctest::Approx(ellint_F(1.2, k) + 2 * ellint_K(k)).epsilon(1e-13));
        CHECK(ellint_F(1.2 - 3 * kPi, k) == doctest::Approx(ellint_F(1.2, k) - 6 * ellint_K(k)).epsilon(1e-13));
    }

    CHECK_THROWS_AS(ellint_F(INFINITY, Modulus(0.2)), std::domain_error);
}

TEST_CASE("complete integral K") {
    CHECK(std::abs(ellint_K(Modulus(0.0)) - kPi / 2) < 1e-14);
    const double k = std::sqrt(1.0 / 3.0);
    CHECK(std::abs(ellint_K(Modulus(k)) - quadrature_F(kPi / 2, k)) < 1e-13);
    double previous = ellint_K(Modulus(0.0));
    for (double kk = 0.05; kk < 0.99; kk += 0.05) {
        const double current = ellint_K(Modulus(kk));
        CHECK(current > previous);
        previous = current;
    }
    CHECK_NOTHROW(ellint_K(Modulus(1.0 - 1e-11)));
    CHECK_THROWS_AS(ellint_K(Modulus(1.0 - 1e-13)), std::domain_error);
}

TEST_CASE("Jacobi amplitude") {
    CHECK(jacobi_am(0.0, Modulus(0.6)) == 0.0);
    const Modulus k(0.6);
    CHECK(jacobi_am(ellint_K(k), k) == doctest::Approx(kPi / 2).epsilon(1e-14));
    CHECK(std::abs(ellint_F(jacobi_am(1.3, k), k) - 1.3) < 1e-12);

    SUBCASE("roundtrip over five periods") {
        Uniform draw(7);
        for (int i = 0; i < 400; ++i) {
            const Modulus kk(draw(0.0, 0.99));
            const double big_k = ellint_K(kk);
            const double m = draw(-5 * big_k, 5 * big_k);
            CHECK(std::abs(ellint_F(jacobi_am(m, kk), kk) - m) < 1e-11);
        }
    }

    SUBCASE("quasi-periodicity, oddness, monotonicity") {
        Uniform draw(8);
        for (int i = 0; i < 100; ++i) {
            const Modulus kk(draw(0.0, 0.99));
            const double m = draw(-10.0, 10.0);
            const double big_k = ellint_K(kk);
            CHECK(std::abs(jacobi_am(m + 2 * big_k, kk) - jacobi_am(m, kk) - kPi) < 1e-11);
            CHECK(jacobi_am(-m, kk) == doctest::Approx(-jacobi_am(m, kk)).epsilon(1e-15));
            CHECK(jacobi_am(m + 1e-3, kk) > jacobi_am(m, kk));
        }
    }

    SUBCASE("long double variant agrees") {
        for (double m : {-7.3, -0.4, 0.0, 1.1, 5.9}) {
            const Modulus kk(0.9);
            CHECK(static_cast<double>(jacobi_am_extended(m, kk)) == doctest::Approx(jacobi_am(m, kk)).epsilon(1e-14));
        }
    }
}

TEST_CASE("Jacobi dn") {
    CHECK(jacobi_dn(2.3, Modulus(0.0)) == 1.0);
    CHECK(jacobi_dn(0.0, Modulus(0.7)) == 1.0);
    const Modulus k(0.7);
    const double h = 1e-5;
    const double central = (jacobi_am(0.8 + h, k) - jacobi_am(0.8 - h, k)) / (2 * h);
    CHECK(std::abs(jacobi_dn(0.8, k) - central) < 1e-8);

    Uniform draw(9);
    for (int i = 0; i < 200; ++i) {
        const double kk = draw(0.0, 0.99);
        const double m = draw(-20.0, 20.0);
        const double dn = jacobi_dn(m, Modulus(kk));
        CHECK(dn <= 1.0);
        CHECK(dn >= std::sqrt(1.0 - kk * kk) - 1e-15);
        CHECK(jacobi_dn(m + 2 * ellint_K(Modulus(kk)), Modulus(kk)) == doctest::Approx(dn).epsilon(1e-10));
    }
}

TEST_CASE("Weierstrass p with g3 = 0 is tau^-2 exactly") {
    CHECK(weierstrass_p(2.0, {0.0, 0.0}) == 0.25);
    CHECK(weierstrass_p(0.5, {0.0, 0.0}) == 4.0);
    CHECK(weierstrass_p_prime(2.0, {0.0, 0.0}) == -0.25);
    CHECK(weierstrass_p_prime(1.0, {0.0, 0.0}) == -2.0);
    for (int i = 0; i <= 990; ++i) {
        const double tau = 0.1 + 0.01 * i;
        CHECK(weierstrass_p(tau, {0.0, 0.0}) == 1.0 / (tau * tau));
    }
    CHECK_THROWS_AS(weierstrass_p(1.0, {0.5, 1.0}), std::domain_error);
}

TEST_CASE("Weierstrass p with g3 != 0") {
    const WeierstrassInvariants inv{0.0, 4.0};
    const auto [p, dp] = weierstrass_eval(1.1, inv);
    CHECK(std::abs(dp * dp - 4 * p * p * p + 4.0) < 1e-10 * (1 + std::abs(p * p * p)));
    const double h = 1e-5;
    const double central = (weierstrass_p(1.1 + h, inv) - weierstrass_p(1.1 - h, inv)) / (2 * h);
    CHECK(std::abs(weierstrass_p_prime(1.1, inv) - central) < 1e-8 * std::max(1.0, std::abs(central)));

    SUBCASE("differential equation on a grid away from poles") {
        for (double g3 : {-8.0, -1.0, 0.5, 1.0, 4.0, 30.0}) {
            const double omega = weierstrass_real_half_period(g3);
            for (int i = 1; i < 200; ++i) {
                const double tau = -3 * omega + 6 * omega * i / 200.0;
                const double frac = std::remainder(tau, 2 * omega);
                if (std::abs(frac) < 0.05 * omega) continue;
                const auto v = weierstrass_eval(tau, {0.0, g3});
                const double res = std::abs(v.dp * v.dp - 4 * v.p * v.p * v.p + g3);
                CHECK(res / (1 + std::abs(v.p * v.p * v.p)) < 1e-9);
            }
        }
    }

    SUBCASE("inverse by quadrature on the first half-period") {
        for (double g3 : {1.0, 4.0, -3.0}) {
            const double omega = weierstrass_real_half_period(g3);
            for (double frac : {0.1, 0.3, 0.6, 0.9}) {
                const double tau = frac * omega;
                CHECK(quadrature_wp_inverse(weierstrass_p(tau, {0.0, g3}), g3) == doctest::Approx(tau).epsilon(1e-10));
            }
            // At the half-period wp is the real root of 4 t^3 - g3.
            CHECK(weierstrass_p(omega, {0.0, g3}) == doctest::Approx(std::cbrt(g3 / 4)).epsilon(1e-10));
        }
    }

    SUBCASE("half period matches the integral over the real branch") {
        // The real root of 4 t^3 - g3 is where wp' vanishes, for either sign of g3.
        for (double g3 : {1.0, 4.0, 27.0, -1.0, -5.0}) {
            CHECK(weierstrass_real_half_period(g3) ==
                  doctest::Approx(quadrature_wp_inverse(std::cbrt(g3 / 4), g3)).epsilon(1e-10));
        }
        CHECK(std::isinf(weierstrass_real_half_period(0.0)));
    }

    SUBCASE("even, periodic and guarded at lattice points") {
        const double omega = weierstrass_real_half_period(4.0);
        CHECK(weierstrass_p(-0.7, inv) == doctest::Approx(weierstrass_p(0.7, inv)).epsilon(1e-15));
        CHECK(weierstrass_p(0.7 + 2 * omega, inv) == doctest::Approx(weierstrass_p(0.7, inv)).epsilon(1e-10));
        CHECK_THROWS_AS(weierstrass_p(2 * omega, inv), PoleProximityError);
        CHECK_THROWS_AS(weierstrass_p(0.0, inv), PoleProximityError);
        CHECK_THROWS_AS(weierstrass_p(0.0, {0.0, 0.0}), PoleProximityError);
    }
}
