#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "jhflow/field.hpp"
#include "jhflow/nonradial.hpp"
#include "jhflow/radial.hpp"

/// Numerical checks of the exact solutions: finite-difference PDE residuals,
/// angular ODE residuals, an RK4 oracle, derivative matching across the ray
/// theta = 0, and the swirl and scaling identities.
namespace jhflow::verify {

/// Raised when a finite-difference stencil leaves the evaluator's domain.
class StencilError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

struct FieldEvaluator {
    std::function<FieldSample(double, double)> eval;
    std::function<bool(double, double)> contains;
    /// Expected value of x v - y u.
    double c0 = 0.0;
};

FieldEvaluator radial_evaluator(const radial::RadialProfileSpec& spec, bool extended = false);
FieldEvaluator reciprocal_evaluator(const radial::RadialProfileSpec& spec);
FieldEvaluator nonradial_evaluator(const nonradial::NonRadialSpec& spec);
FieldEvaluator landau_evaluator(double radial_coeff, double swirl);
/// The same evaluator with u multiplied by factor; used to check that broken
/// fields are caught.
FieldEvaluator scale_u(FieldEvaluator fe, double factor);

struct ResidualReport {
    double momentum_x = 0.0;
    double momentum_y = 0.0;
    double divergence = 0.0;
    double constraint = 0.0;
    double normalization = 1.0;

    /// Largest of the three PDE components divided by the normalization.
    [[nodiscard]] double max_normalized() const noexcept;
};

/// Step used when none is given: 1e-3 times the distance to the origin.
double default_step(double x, double y) noexcept;

/// Fourth-order central differences on the nine-point cross around (x, y).
ResidualReport pde_residual(const FieldEvaluator& fe, double x, double y, double step);
ResidualReport pde_residual(const FieldEvaluator& fe, double x, double y);

/// Default angular step of the profile checks.
inline constexpr double kAngularStep = 1e-3;

/// |f'' + f^2 + 4f + 2 C1| with f'' by fourth-order central differences. Not
/// defined for F0 (constants are checked at the PDE level).
double angular_ode_residual(const radial::RadialProfileSpec& spec, double theta, double step = kAngularStep);

/// Step of the first-integral check; the residual is only first order in f',
/// so truncation rather than roundoff sets the step.
inline constexpr double kFirstIntegralStep = 2.5e-4;

/// (f')^2 + (2/3) f^3 + 4 f^2 + 4 C1 f + (2/3) C2 with f' by central differences.
double first_integral_residual(const radial::RadialProfileSpec& spec, double theta,
                               double step = kFirstIntegralStep);

/// Max |closed form - RK4| on [theta0, theta1], RK4 of f'' = -f^2 - 4f - 2C1
/// started from the closed-form f and f' at theta0.
double ode_oracle_compare(const radial::RadialProfileSpec& spec, double theta0, double theta1, double step);

struct RayMismatch {
    int order = 0;
    double at_zero = 0.0;    // f^(order)(0+)
    double at_two_pi = 0.0;  // f^(order)(2pi-)
    double mismatch = 0.0;
    double scale = 1.0;      // max(1, |at_zero|, |at_two_pi|)
};

/// One-sided five-point derivatives with Richardson refinement at both sides
/// of the ray theta = 0, for orders 0..order (order <= 4).
std::vector<RayMismatch> smoothness_across_ray(const radial::RadialProfileSpec& spec, int order);
std::vector<RayMismatch> smoothness_across_ray(const radial::GlobalSolution& sol, int order);

/// Residual of the Lienard equation with the closed-form derivatives of H.
double lienard_residual(const nonradial::NonRadialSpec& spec, double theta);

/// |x v - y u - c0_expected|.
double constraint_check(const FieldEvaluator& fe, double c0_expected, double x, double y);

/// max(|l u(lx, ly) - u|, |l v(lx, ly) - v|, |l^2 p(lx, ly) - p|).
double scaling_check(const FieldEvaluator& fe, double lambda, double x, double y);

using Point = std::pair<double, double>;

/// Deterministic random points well inside the evaluation domain: radii in
/// [0.5, 2] and angles in the principal validity piece shrunk by 5% per side
/// (the whole turn for extended fields).
std::vector<Point> interior_samples(const radial::RadialProfileSpec& spec, bool extended, int count,
                                    std::uint64_t seed);
std::vector<Point> interior_samples(const nonradial::NonRadialSpec& spec, int count, std::uint64_t seed);

struct SweepSummary {
    std::size_t points = 0;
    double max_residual = 0.0;
    double mean_residual = 0.0;
    double max_constraint = 0.0;
    double max_scaling = 0.0;
};

/// pde_residual, constraint_check and scaling_check (lambda in {0.5, 2, 10})
/// over the points; scaling is skipped where the scaled point is outside.
SweepSummary sweep(const FieldEvaluator& fe, const std::vector<Point>& points);

}  // namespace jhflow::verify
