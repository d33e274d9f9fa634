#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>

#include "fixtures.hpp"
#include "jhflow/cubic.hpp"

using namespace jhflow::cubic;
using jhflow::testing::Uniform;

namespace {

/// Eigenvalues of the companion matrix of h^3 + 6h^2 + 6 C1 h + C2.
std::vector<std::complex<double>> companion_roots(ParameterPoint p) {
    Eigen::Matrix3d m;
    m << -6.0, -6.0 * p.c1, -p.c2, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0;
    const Eigen::EigenSolver<Eigen::Matrix3d> solver(m, false);
    std::vector<std::complex<double>> out;
    for (int i = 0; i < 3; ++i) out.push_back(solver.eigenvalues()[i]);
    return out;
}

struct Vieta {
    double sum, pair, product;
};

Vieta vieta_of(const CubicRoots& roots) {
    return std::visit(
        [](const auto& r) -> Vieta {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, ThreeDistinctReal>) {
                return {r.a + r.b + r.c, r.a * r.b + r.a * r.c + r.b * r.c, r.a * r.b * r.c};
            } else if constexpr (std::is_same_v<T, DoubleAndSimple>) {
                const double d = r.double_root, s = r.simple_root;
                return {2 * d + s, d * d + 2 * d * s, d * d * s};
            } else if constexpr (std::is_same_v<T, TripleReal>) {
                return {3 * r.r, 3 * r.r * r.r, r.r * r.r * r.r};
            } else {
                const double mod2 = r.m * r.m + r.n * r.n;
                return {r.alpha + 2 * r.m, mod2 + 2 * r.alpha * r.m, r.alpha * mod2};
            }
        },
        roots);
}

}  // namespace

TEST_CASE("cubic polynomial values") {
    CHECK(p3_eval(-2.0, {2.0, 8.0}) == 0.0);
    CHECK(p3_eval(0.0, {1.7, -3.25}) == -3.25);
    CHECK(p3_eval(1.0, {-1.5, -14.0}) == -16.0);
}

TEST_CASE("discriminants and boundary curves") {
    CHECK(discriminants({2.0, 8.0}).delta_cubic == 0.0);
    for (double c2 : {-5.0, 0.0, 8.0, 20.0}) CHECK(discriminants({2.0, c2}).delta_square == 0.0);
    const auto d = discriminants({0.0, 5.0});
    REQUIRE(d.l_plus.has_value());
    CHECK(*d.l_plus == 0.0);
    CHECK(*d.l_minus == -32.0);
    CHECK_FALSE(discriminants({3.0, 0.0}).l_plus.has_value());
    CHECK(discriminants({-1.5, -14.0}).delta_cubic > 0);
    CHECK(discriminants({3.0, 0.0}).delta_cubic < 0);
    // The boundary curves are exactly where the cubic discriminant vanishes.
    for (double c1 : {-7.0, -1.0, 0.5, 1.9}) {
        for (int sign : {+1, -1}) {
            const double c2 = *boundary_curve(c1, sign);
            const double scale = 27 * (c2 * c2 + 32 * std::abs(c1 * c1 * c1) + 1);
            CHECK(std::abs(discriminants({c1, c2}).delta_cubic) < 1e-12 * scale);
        }
    }
}

TEST_CASE("classification of named points") {
    CHECK(classify({3.0, 0.0}) == RegionTag::I1);
    CHECK(classify({2.0, 8.0}) == RegionTag::P0);
    CHECK(classify({2.0, 3.0}) == RegionTag::Gamma0);
    CHECK(classify({0.0, -10.0}) == RegionTag::II);
    CHECK(classify({0.0, 0.0}) == RegionTag::GammaPlus);
    CHECK(classify({0.0, -32.0}) == RegionTag::GammaMinus);
    CHECK(classify({0.0, 1.0}) == RegionTag::I2);
    CHECK(classify({0.0, -40.0}) == RegionTag::I2);
    CHECK(classify({0.0, 1e-13}) == RegionTag::GammaPlus);
    CHECK(classify({0.0, -32.0 * (1 + 1e-13)}) == RegionTag::GammaMinus);
    CHECK(classify({0.0, -32.0 * (1 + 1e-9)}) == RegionTag::I2);
    CHECK(in_region_I(RegionTag::Gamma0));
    CHECK_FALSE(in_region_I(RegionTag::P0));
    for (auto tag : {RegionTag::I1, RegionTag::Gamma0, RegionTag::I2, RegionTag::P0, RegionTag::II,
                     RegionTag::GammaPlus, RegionTag::GammaMinus}) {
        CHECK(region_from_string(to_string(tag)) == tag);
    }
    CHECK_THROWS(classify({NAN, 1.0}));
}

TEST_CASE("named root structures") {
    const auto triple = std::get<TripleReal>(solve_cubic({2.0, 8.0}));
    CHECK(triple.r == -2.0);

    const auto ds = std::get<DoubleAndSimple>(solve_cubic({0.0, 0.0}));
    CHECK(std::abs(ds.double_root) < 1e-14);
    CHECK(ds.simple_root == doctest::Approx(-6.0).epsilon(1e-14));

    const auto three = std::get<ThreeDistinctReal>(solve_cubic({-1.5, -14.0}));
    CHECK(three.a == doctest::Approx(-7.0).epsilon(1e-14));
    CHECK(three.b == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(three.c == doctest::Approx(2.0).epsilon(1e-14));

    const auto conj = std::get<OneRealPlusConjugate>(solve_cubic({3.0, 0.0}));
    CHECK(conj.n > 0);
    CHECK(std::abs(conj.alpha) < 1e-14);  // h (h^2 + 6h + 18)
    CHECK(conj.m == doctest::Approx(-3.0).epsilon(1e-14));
    CHECK(conj.n == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("double roots on the boundary curves") {
    for (double c1 : {-5.0, -0.3, 0.0, 1.0, 1.99}) {
        const double s = std::sqrt(2 * (2 - c1));
        const auto plus = std::get<DoubleAndSimple>(solve_cubic({c1, *boundary_curve(c1, +1)}));
        CHECK(std::abs(plus.double_root - (-2 + s)) < 1e-9);
        CHECK(std::abs(plus.simple_root - (-2 - 2 * s)) < 1e-9);
        const auto minus = std::get<DoubleAndSimple>(solve_cubic({c1, *boundary_curve(c1, -1)}));
        CHECK(std::abs(minus.double_root - (-2 - s)) < 1e-9);
        CHECK(std::abs(minus.simple_root - (-2 + 2 * s)) < 1e-9);
    }
}

TEST_CASE("random points agree with the companion-matrix roots") {
    Uniform draw(2024);
    int mismatches = 0;
    for (int i = 0; i < 1000; ++i) {
        const ParameterPoint p{draw(-10.0, 10.0), draw(-50.0, 20.0)};
        const RegionTag tag = classify(p);
        const CubicRoots roots = solve_cubic(p);

        const auto oracle = companion_roots(p);
        const int oracle_real =
            static_cast<int>(std::count_if(oracle.begin(), oracle.end(), [](auto z) { return std::abs(z.imag()) < 1e-7; }));
        const bool three_real = oracle_real == 3;

        const bool consistent = (tag == RegionTag::II) == std::holds_alternative<ThreeDistinctReal>(roots) &&
                                in_region_I(tag) == std::holds_alternative<OneRealPlusConjugate>(roots) &&
                                three_real == (tag == RegionTag::II);
        if (!consistent) ++mismatches;

        const Vieta v = vieta_of(roots);
        CHECK(std::abs(v.sum + 6) < 1e-9);
        CHECK(std::abs(v.pair - 6 * p.c1) < 1e-8);
        CHECK(std::abs(v.product + p.c2) < 1e-8);

        std::vector<double> mine = real_roots(roots);
        std::vector<double> theirs;
        for (auto z : oracle)
            if (std::abs(z.imag()) < 1e-7) theirs.push_back(z.real());
        std::sort(theirs.begin(), theirs.end());
        if (mine.size() == theirs.size()) {
            for (std::size_t j = 0; j < mine.size(); ++j) CHECK(mine[j] == doctest::Approx(theirs[j]).epsilon(1e-8));
        }
        for (double r : mine) CHECK(std::abs(p3_eval(r, p)) < 1e-10 * (1 + std::abs(r * r * r)));
    }
    CHECK(mismatches == 0);
}
