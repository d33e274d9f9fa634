#pragma once

#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "jhflow/cubic.hpp"
#include "jhflow/field.hpp"

/// Radial self-similar profiles f0..f7, the fields u = x f / r^2, v = y f / r^2,
/// and the globally periodic solutions on the punctured plane.
namespace jhflow::radial {

/// Raised when a profile is requested for a parameter point outside its region.
class InadmissibleSpec : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Raised when the periodicity root-finder cannot bracket a root.
class NoBracketError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Family { F0, F1, F2, F3, F4, F5, F6, F7 };

std::string_view to_string(Family family) noexcept;
std::optional<Family> family_from_string(std::string_view name) noexcept;

inline constexpr double kPi = 3.14159265358979323846;

/// Default evaluation window: the half-plane x > 0.
inline constexpr ThetaInterval kHalfPlane{-kPi / 2, kPi / 2, true, true};
/// Window used by the extended (full-turn) evaluation through tilde_theta.
inline constexpr ThetaInterval kFullTurn{0.0, 2 * kPi, false, false};

/// A profile family with its derived constants. Construct through make_profile
/// or make_profile_from_roots; the fields are filled consistently there.
struct RadialProfileSpec {
    Family family = Family::F0;
    cubic::ParameterPoint source{};
    /// Free integration constant C of the closed form; for F0 the constant value.
    double shift = 0.0;

    // F1: real root alpha, conjugate pair m +- n i, beta = |alpha - (m + n i)|.
    double alpha = 0.0, m = 0.0, n = 0.0, beta = 0.0;
    // F3/F4: the ordered roots a < b < c.
    double a = 0.0, b = 0.0, c = 0.0;
    // Modulus and its complete integral for F1/F3/F4.
    double k = 0.0, big_k = 0.0;

    ThetaInterval window = kHalfPlane;
};

RadialProfileSpec make_profile(Family family, cubic::ParameterPoint p, double shift);
/// F3 or F4 straight from the roots, which avoids re-solving the cubic.
RadialProfileSpec make_profile_from_roots(Family family, double a, double b, double c, double shift);

/// The same profile evaluated over another angular window.
RadialProfileSpec with_window(RadialProfileSpec spec, ThetaInterval window);

/// The constant C1' for which f'' + f^2 + 4f + 2C1' = 0 holds. Equals source.c1
/// for F1..F7; for F0 it is -(C^2 + 4C)/2, which reduces to C1 exactly when C
/// is a double root of P3.
double ode_parameter(const RadialProfileSpec& spec) noexcept;

/// Poles of the profile inside the window, ascending.
std::vector<double> poles(const RadialProfileSpec& spec, ThetaInterval window);

/// Maximal pole-free open pieces of spec.window.
std::vector<ThetaInterval> validity(const RadialProfileSpec& spec);

/// The validity piece containing theta = 0, or the one nearest to it.
std::optional<ThetaInterval> principal_interval(const RadialProfileSpec& spec);

bool is_valid(const RadialProfileSpec& spec, double theta);

/// f(theta); domain_error outside validity.
double eval_f(const RadialProfileSpec& spec, double theta);
/// f'(theta) from the closed form.
double eval_df(const RadialProfileSpec& spec, double theta);

/// eval_f carried out in long double.
long double eval_f_extended(const RadialProfileSpec& spec, long double theta);

/// Continuous polar angle in [0, 2pi) built from arctangents on each quadrant.
double tilde_theta(double x, double y);

/// u = x f / r^2, v = y f / r^2, p = (2f + C1') / r^2 with C1' = ode_parameter.
/// Non-extended: x > 0, angle arctan(y/x) within spec.window. Extended: angle
/// tilde_theta(x, y) checked against the full turn [0, 2pi].
FieldSample eval_field_radial(const RadialProfileSpec& spec, double x, double y, bool extended = false);

/// Same field law driven by the reciprocal angle arctan(x/y); requires y != 0.
FieldSample eval_field_reciprocal(const RadialProfileSpec& spec, double x, double y);

struct GlobalSolution {
    int n_periods = 0;
    double seed = 0.0;
    double a = 0.0, b = 0.0, c = 0.0;
    cubic::ParameterPoint source{};
    double shift = 0.0;
    /// pi sqrt((c - a)/6) - n K(k).
    double condition_residual = 0.0;
    double flux = 0.0;
    /// 4 + flux/pi < n^2.
    bool flux_condition = false;
};

/// pi sqrt((c - a)/6) - n K(sqrt((c - b)/(c - a))).
double periodicity_residual(double a, double b, double c, int n_periods);

/// Roots a < b < c with a + b + c = -6 whose f3 profile is 2pi/n periodic.
/// The seed fixes k^2 = (c - b)/(c - a) in (0, 1); the root c is then found by
/// bracketing along that path.
GlobalSolution global_periodic_solve(int n_periods, double seed = 0.5, double shift = 0.0);

/// The F3 profile of a global solution, windowed on the full turn.
RadialProfileSpec global_profile(const GlobalSolution& sol);

/// Integral of f over [0, 2pi] by adaptive Gauss-Kronrod quadrature.
double flux(const RadialProfileSpec& spec);
double flux(const GlobalSolution& sol);

}  // namespace jhflow::radial
