#include "jhflow/elliptic.hpp"

#include <array>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/special_functions/ellint_1.hpp>

namespace jhflow::elliptic {

namespace {

constexpr double kPi = std::numbers::pi;

void require_finite(double x, const char* what) {
    if (!std::isfinite(x)) {
        throw std::domain_error(std::string(what) + " must be finite");
    }
}

void require_equianharmonic(const WeierstrassInvariants& inv) {
    if (inv.g2 != 0.0) {
        throw std::domain_error("only invariants with g2 == 0 are supported");
    }
    require_finite(inv.g3, "g3");
}

// F on the principal strip |phi| <= pi/2.
template <class Real>
Real ellint_F_principal(Real phi, Real k) {
    if (k == 0) {
        return phi;
    }
    return boost::math::ellint_1(k, phi);
}

template <class Real>
Real complete_K(Real k) {
    if (k > static_cast<Real>(kMaxCompleteModulus)) {
        throw std::domain_error("K(k) diverges as k -> 1; modulus too close to 1");
    }
    if (k == 0) {
        return std::numbers::pi_v<Real> / 2;
    }
    return boost::math::ellint_1(k);
}

template <class Real>
Real amplitude(Real m, Real kk) {
    if (!std::isfinite(m)) {
        throw std::domain_error("argument must be finite");
    }
    if (kk == 0) {
        return m;
    }
    constexpr Real half_pi = std::numbers::pi_v<Real> / 2;
    constexpr Real eps = std::numeric_limits<Real>::epsilon();
    const Real big_k = complete_K(kk);
    const Real j = std::nearbyint(m / (2 * big_k));
    const Real r = m - 2 * j * big_k;  // r in [-K, K]

    // F is odd and increasing on [-pi/2, pi/2]; invert on the principal strip.
    Real lo = -half_pi;
    Real hi = half_pi;
    Real phi = r * half_pi / big_k;
    bool converged = false;
    for (int it = 0; it < 60; ++it) {
        const Real s = std::sin(phi);
        const Real resid = ellint_F_principal(phi, kk) - r;
        if (resid == 0) {
            converged = true;
            break;
        }
        if (resid > 0) {
            hi = std::min(hi, phi);
        } else {
            lo = std::max(lo, phi);
        }
        const Real step = resid * std::sqrt(1 - kk * kk * s * s);
        Real next = phi - step;
        if (!(next > lo && next < hi)) {
            next = (lo + hi) / 2;  // bisection fallback
        }
        if (std::abs(next - phi) <= eps * (1 + std::abs(phi))) {
            phi = next;
            converged = true;
            break;
        }
        phi = next;
    }
    if (!converged) {
        // Newton stalls only by oscillating in the last ulp; settle by bisection.
        for (int it = 0; it < 200 && hi - lo > 4 * eps; ++it) {
            const Real mid = (lo + hi) / 2;
            (ellint_F_principal(mid, kk) > r ? hi : lo) = mid;
        }
        phi = (lo + hi) / 2;
    }
    return j * std::numbers::pi_v<Real> + phi;
}

// Laurent coefficients c_j of wp(z) = z^-2 + sum_{j>=2} c_j z^(2j-2) for g2 = 0.
constexpr int kLaurentTerms = 40;

std::array<double, kLaurentTerms + 1> laurent_coefficients(double g3) {
    std::array<double, kLaurentTerms + 1> c{};
    c[2] = 0.0;
    c[3] = g3 / 28.0;
    for (int j = 4; j <= kLaurentTerms; ++j) {
        double s = 0.0;
        for (int m = 2; m <= j - 2; ++m) {
            s += c[m] * c[j - m];
        }
        c[j] = 3.0 * s / ((2.0 * j + 1.0) * (j - 3.0));
    }
    return c;
}

WeierstrassValue laurent_eval(double z, double g3) {
    const auto c = laurent_coefficients(g3);
    const double w = z * z;
    double p = 0.0;
    double dp = 0.0;
    for (int j = kLaurentTerms; j >= 2; --j) {
        p = p * w + c[j];
        dp = dp * w + (2.0 * j - 2.0) * c[j];
    }
    // p currently holds sum c_j w^(j-2); dp holds sum (2j-2) c_j w^(j-2).
    return {1.0 / w + p * w, -2.0 / (w * z) + dp * z};
}

}  // namespace

Modulus::Modulus(double k) : k_(k) {
    if (!std::isfinite(k) || k < 0.0 || k >= 1.0) {
        throw std::domain_error("elliptic modulus must satisfy 0 <= k < 1, got " +
                                std::to_string(k));
    }
}

double ellint_K(Modulus k) { return complete_K(k.value()); }

double ellint_F(double phi, Modulus k) {
    require_finite(phi, "amplitude");
    if (k.value() == 0.0) {
        return phi;
    }
    if (std::abs(phi) <= kPi / 2.0) {
        return ellint_F_principal(phi, k.value());
    }
    const double j = std::nearbyint(phi / kPi);
    const double r = phi - j * kPi;
    return 2.0 * j * ellint_K(k) + ellint_F_principal(r, k.value());
}

double jacobi_am(double m, Modulus k) { return amplitude(m, k.value()); }

long double jacobi_am_extended(long double m, Modulus k) {
    return amplitude(m, static_cast<long double>(k.value()));
}

double jacobi_dn(double m, Modulus k) {
    const double s = std::sin(jacobi_am(m, k));
    return std::sqrt(1.0 - k.parameter() * s * s);
}

double weierstrass_real_half_period(double g3) {
    if (!std::isfinite(g3)) {
        throw std::domain_error("g3 must be finite");
    }
    if (g3 == 0.0) {
        return INFINITY;
    }
    // Equianharmonic lattice: omega = Gamma(1/3)^3 / (4 pi g3^(1/6)) for g3 > 0.
    // For g3 < 0 the real axis runs along the rotated (longer) diagonal.
    const double gamma3 = std::tgamma(1.0 / 3.0);
    const double omega = gamma3 * gamma3 * gamma3 / (4.0 * kPi * std::pow(std::abs(g3), 1.0 / 6.0));
    return g3 > 0.0 ? omega : std::numbers::sqrt3 * omega;
}

WeierstrassValue weierstrass_eval(double tau, WeierstrassInvariants inv) {
    require_equianharmonic(inv);
    require_finite(tau, "tau");
    if (std::abs(tau) < kPoleGuard) {
        throw PoleProximityError("tau is within the pole guard of the lattice point 0");
    }
    const double g3 = inv.g3;
    if (g3 == 0.0) {
        return {1.0 / (tau * tau), -2.0 / (tau * tau * tau)};
    }

    double sign = tau < 0.0 ? -1.0 : 1.0;  // wp is even, wp' is odd
    const double omega = weierstrass_real_half_period(g3);
    const double period = 2.0 * omega;
    double t = std::fmod(std::abs(tau), period);
    if (std::min(t, period - t) < kPoleGuard) {
        throw PoleProximityError("tau is within the pole guard of a real lattice point");
    }
    if (t > omega) {
        t = period - t;
        sign = -sign;
    }

    int doublings = 0;
    while (t > 0.25 * omega) {
        t *= 0.5;
        ++doublings;
    }
    auto [p, dp] = laurent_eval(t, g3);
    for (int i = 0; i < doublings; ++i) {
        const double p3 = p * p * p;
        const double disc = 4.0 * p3 - g3;  // = wp'(z)^2
        const double p2 = -2.0 * p + 9.0 * p3 * p / disc;
        const double dp2 = 0.5 * dp * (-2.0 + 36.0 * p3 * (p3 - g3) / (disc * disc));
        p = p2;
        dp = dp2;
    }
    return {p, sign * dp};
}

double weierstrass_p(double tau, WeierstrassInvariants inv) { return weierstrass_eval(tau, inv).p; }

double weierstrass_p_prime(double tau, WeierstrassInvariants inv) {
    return weierstrass_eval(tau, inv).dp;
}

}  // namespace jhflow::elliptic
