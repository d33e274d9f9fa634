#pragma once

#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "jhflow/field.hpp"

/// Non-radial self-similar solutions with x v - y u = C0 != 0: the linear
/// (Landau-type) part, the Lienard equation for the angular correction H, and
/// its integrable Weierstrass and elementary solutions.
namespace jhflow::nonradial {

/// Raised when the Lienard integrator leaves |H| <= 1e12.
class BlowUpError : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

enum class Variant { LinearOnly, Weierstrass, Degenerate, NumericLienard };

std::string_view to_string(Variant variant) noexcept;
std::optional<Variant> variant_from_string(std::string_view name) noexcept;

struct LienardState {
    double theta = 0.0;
    double h = 0.0;
    double dh = 0.0;
};

struct NonRadialSpec {
    double c0 = 0.0;
    double ctilde1 = 0.0;
    double g3 = 0.0;
    /// Shift C of the wp argument (Weierstrass) or of the denominator (Degenerate).
    double shift = 0.0;
    Variant variant = Variant::LinearOnly;
    /// NumericLienard only: H and H' at theta = 0.
    double h0 = 0.0;
    double dh0 = 0.0;
};

/// Ctilde1 = -2 + 3 C0^2 / 25, the integrable value.
double integrable_ctilde1(double c0) noexcept;
/// C1 = 2 - C0^2/2 - 9 C0^4/1250, the matching radial constant.
double integrable_c1(double c0) noexcept;

/// Ctilde1 = -2 +- sqrt(4 - C0^2 - 2 C1); domain_error when the radicand is negative.
double linear_coefficient(double c0, double c1, int branch);

/// Residual of the reduced equation for h(z) with C0 != 0:
/// (z^2+1)^2 h'' + (2z - C0)(z^2+1) h' + h^2 + (2 C0 z + 4) h + 2 C0 z^3 + 6 C0 z + 2 C1.
double reduced_equation_residual(double z, double h, double dh, double d2h, double c0, double c1) noexcept;

NonRadialSpec make_linear(double c0, double c1, int branch);
NonRadialSpec make_weierstrass(double c0, double g3, double shift);
NonRadialSpec make_degenerate(double c0, double shift);
NonRadialSpec make_numeric(double c0, double ctilde1, double h0, double dh0);

/// Throws std::domain_error if the spec violates its variant's invariants.
void validate(const NonRadialSpec& spec);

/// H'' = C0 H' - H^2 - 2 (Ctilde1 + 2) H.
double lienard_rhs(const LienardState& state, double c0, double ctilde1) noexcept;

/// Classical RK4 from init to theta_end (either direction) with |step| as the
/// step size; the final step is shortened to land on theta_end.
std::vector<LienardState> lienard_integrate(const NonRadialSpec& spec, LienardState init, double theta_end,
                                            double step);

/// [(H' - (2C0/5) H)^2 + (2/3) H^3] exp(-(6C0/5) theta); constant along
/// solutions of the integrable equation.
double first_integral(const LienardState& state, double c0) noexcept;

struct AngularValue {
    double h;
    double dh;
    double d2h;
};

/// H(theta) = -(6 C0^2/25) e^{2 C0 theta/5} wp(e^{C0 theta/5} + C; 0, g3) and its
/// first two derivatives by the chain rule with wp'' = 6 wp^2.
AngularValue weierstrass_H_derivatives(double theta, double c0, double g3, double shift);
double weierstrass_H(double theta, double c0, double g3, double shift);

/// H(theta) = -(6 C0^2/25) / (1 + C e^{-C0 theta/5})^2 and derivatives.
AngularValue degenerate_H_derivatives(double theta, double c0, double shift);

/// H and derivatives for any variant (zero for LinearOnly; RK4 from theta = 0
/// with a fixed number of steps for NumericLienard).
AngularValue angular_profile(const NonRadialSpec& spec, double theta);

/// u = (A x - B y)/r^2, v = (A y + B x)/r^2, p = -(A^2 + B^2)/(2 r^2).
FieldSample landau_field(double radial_coeff, double swirl, double x, double y);

/// Linear part plus (x H, y H, 2H)/r^2 at theta = arctan(y/x); needs x > 0.
FieldSample nonradial_field(const NonRadialSpec& spec, double x, double y);

/// Elementary field of the g3 = 0 family, written out directly.
FieldSample degenerate_field(double c0, double shift, double x, double y);

/// Pole-free pieces of the window for the angular profile of the spec.
std::vector<ThetaInterval> pole_free_windows(const NonRadialSpec& spec,
                                             ThetaInterval window = {-1.5707963267948966, 1.5707963267948966});

}  // namespace jhflow::nonradial
