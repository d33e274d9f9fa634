#pragma once

#include <optional>
#include <string_view>
#include <variant>
#include <vector>

/// The cubic P3(h) = h^3 + 6h^2 + 6 C1 h + C2 behind the radial profiles, and
/// the partition of the (C1, C2) plane by its root structure.
namespace jhflow::cubic {

struct ParameterPoint {
    double c1 = 0.0;
    double c2 = 0.0;

    /// Throws std::domain_error unless both coordinates are finite.
    void validate() const;
};

/// Regions of the (C1, C2) bifurcation diagram.
///   I1: C1 > 2.  Gamma0: C1 == 2, C2 != 8.  P0: (2, 8).
///   I2: C1 < 2 outside [L-, L+].  II: C1 < 2, L- < C2 < L+.
///   GammaPlus / GammaMinus: C1 < 2 on C2 == L+ / C2 == L-.
enum class RegionTag { I1, Gamma0, I2, P0, II, GammaPlus, GammaMinus };

std::string_view to_string(RegionTag tag) noexcept;
std::optional<RegionTag> region_from_string(std::string_view name) noexcept;

/// I = I1 u Gamma0 u I2: one real root and a conjugate pair.
bool in_region_I(RegionTag tag) noexcept;

/// Relative tolerance for snapping a point onto C1 = 2, P0 or Gamma+-.
inline constexpr double kBoundaryTolerance = 1e-12;

struct ThreeDistinctReal {
    double a, b, c;  // a < b < c
};
struct DoubleAndSimple {
    double double_root;
    double simple_root;
};
struct TripleReal {
    double r;
};
/// Real root alpha and the pair m +- n i, n > 0.
struct OneRealPlusConjugate {
    double alpha, m, n;
};

using CubicRoots = std::variant<ThreeDistinctReal, DoubleAndSimple, TripleReal, OneRealPlusConjugate>;

double p3_eval(double h, ParameterPoint p) noexcept;

struct Discriminants {
    double delta_cubic;
    double delta_square;
    /// L+-(C1) exist only for C1 <= 2.
    std::optional<double> l_plus;
    std::optional<double> l_minus;
};

Discriminants discriminants(ParameterPoint p);

/// L+-(C1) = 12 C1 - 16 +- 4 (2 - C1) sqrt(2 (2 - C1)); nullopt for C1 > 2.
std::optional<double> boundary_curve(double c1, int sign);

RegionTag classify(ParameterPoint p);

/// Roots of P3 with the structure dictated by classify(p). Real roots are
/// polished by one Newton step where they are simple.
CubicRoots solve_cubic(ParameterPoint p);

/// The roots as a real multiset (repeated roots listed with multiplicity);
/// the conjugate pair is omitted.
std::vector<double> real_roots(const CubicRoots& roots);

}  // namespace jhflow::cubic
