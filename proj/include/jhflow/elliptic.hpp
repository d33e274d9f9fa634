#pragma once

#include <stdexcept>

/// Real-argument elliptic integrals, the Jacobi amplitude and the
/// equianharmonic Weierstrass function wp(.; 0, g3).
namespace jhflow::elliptic {

/// Raised when an argument lies within the pole-proximity window of a
/// lattice point of wp.
class PoleProximityError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Elliptic modulus k with 0 <= k < 1.
class Modulus {
public:
    explicit Modulus(double k);

    [[nodiscard]] double value() const noexcept { return k_; }
    [[nodiscard]] double parameter() const noexcept { return k_ * k_; }

private:
    double k_;
};

/// Invariants (g2, g3). Only the equianharmonic family g2 = 0 is supported.
struct WeierstrassInvariants {
    double g2 = 0.0;
    double g3 = 0.0;
};

/// Largest modulus accepted by ellint_K; K diverges logarithmically at 1.
inline constexpr double kMaxCompleteModulus = 1.0 - 1e-12;

/// Absolute distance to a real lattice point below which wp refuses to
/// evaluate.
inline constexpr double kPoleGuard = 1e-10;

/// Incomplete integral of the first kind F(phi, k), extended to all real
/// phi through F(phi + pi, k) = F(phi, k) + 2K(k).
double ellint_F(double phi, Modulus k);

/// Complete integral of the first kind K(k) = F(pi/2, k).
double ellint_K(Modulus k);

/// Jacobi amplitude: the phi with F(phi, k) = m.
double jacobi_am(double m, Modulus k);

/// jacobi_am carried out in long double, for difference quotients that need
/// the extra digits.
long double jacobi_am_extended(long double m, Modulus k);

/// d am / dm = sqrt(1 - k^2 sin^2 am(m, k)).
double jacobi_dn(double m, Modulus k);

/// wp(tau; 0, g3) for real tau. Even in tau; exactly tau^-2 when g3 == 0.
double weierstrass_p(double tau, WeierstrassInvariants inv);

/// wp'(tau; 0, g3) for real tau.
double weierstrass_p_prime(double tau, WeierstrassInvariants inv);

struct WeierstrassValue {
    double p;
    double dp;
};

/// wp and wp' from one evaluation.
WeierstrassValue weierstrass_eval(double tau, WeierstrassInvariants inv);

/// Real half-period of wp(.; 0, g3): the real poles sit at 2 j omega.
/// Returns +infinity for g3 == 0.
double weierstrass_real_half_period(double g3);

}  // namespace jhflow::elliptic
