#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <variant>

#include "jhflow/cubic.hpp"
#include "jhflow/elliptic.hpp"
#include "jhflow/nonradial.hpp"
#include "jhflow/radial.hpp"
#include "jhflow/verify.hpp"

namespace py = pybind11;
using namespace jhflow;

namespace {

radial::Family parse_family(const std::string& name) {
    const auto family = radial::family_from_string(name);
    if (!family) throw py::value_error("unknown family " + name);
    return *family;
}

py::dict roots_dict(const cubic::CubicRoots& roots) {
    py::dict d;
    std::visit(
        [&](const auto& r) {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, cubic::ThreeDistinctReal>) {
                d["structure"] = "three_distinct";
                d["roots"] = py::make_tuple(r.a, r.b, r.c);
            } else if constexpr (std::is_same_v<T, cubic::DoubleAndSimple>) {
                d["structure"] = "double_and_simple";
                d["double_root"] = r.double_root;
                d["simple_root"] = r.simple_root;
            } else if constexpr (std::is_same_v<T, cubic::TripleReal>) {
                d["structure"] = "triple";
                d["root"] = r.r;
            } else {
                d["structure"] = "one_real_plus_conjugate";
                d["real_root"] = r.alpha;
                d["pair"] = py::make_tuple(r.m, r.n);
            }
        },
        roots);
    return d;
}

py::tuple as_tuple(const FieldSample& s) { return py::make_tuple(s.u, s.v, s.p); }

}  // namespace

PYBIND11_MODULE(_jhflow, m) {
    m.doc() = "Exact self-similar solutions of the planar stationary Navier-Stokes equations";

    py::register_exception<elliptic::PoleProximityError>(m, "PoleProximityError", PyExc_ValueError);
    py::register_exception<radial::NoBracketError>(m, "NoBracketError", PyExc_RuntimeError);

    m.def("ellint_F", [](double phi, double k) { return elliptic::ellint_F(phi, elliptic::Modulus(k)); });
    m.def("ellint_K", [](double k) { return elliptic::ellint_K(elliptic::Modulus(k)); });
    m.def("jacobi_am", [](double u, double k) { return elliptic::jacobi_am(u, elliptic::Modulus(k)); });
    m.def("jacobi_dn", [](double u, double k) { return elliptic::jacobi_dn(u, elliptic::Modulus(k)); });
    m.def("weierstrass_p", [](double tau, double g3) { return elliptic::weierstrass_p(tau, {0.0, g3}); });
    m.def("weierstrass_p_prime", [](double tau, double g3) { return elliptic::weierstrass_p_prime(tau, {0.0, g3}); });

    m.def("classify", [](double c1, double c2) { return std::string(cubic::to_string(cubic::classify({c1, c2}))); });
    m.def("solve_cubic", [](double c1, double c2) { return roots_dict(cubic::solve_cubic({c1, c2})); });

    py::class_<radial::RadialProfileSpec>(m, "RadialProfile")
        .def(py::init([](const std::string& family, double c1, double c2, double shift) {
                 return radial::make_profile(parse_family(family), {c1, c2}, shift);
             }),
             py::arg("family"), py::arg("c1"), py::arg("c2"), py::arg("shift") = 0.0)
        .def_property_readonly("family",
                               [](const radial::RadialProfileSpec& s) { return std::string(radial::to_string(s.family)); })
        .def("f", &radial::eval_f)
        .def("df", &radial::eval_df)
        .def("is_valid", &radial::is_valid)
        .def("validity",
             [](const radial::RadialProfileSpec& s) {
                 py::list out;
                 for (const auto& w : radial::validity(s)) out.append(py::make_tuple(w.lo, w.hi));
                 return out;
             })
        .def("field", [](const radial::RadialProfileSpec& s, double x, double y, bool extended) {
                 return as_tuple(radial::eval_field_radial(s, x, y, extended));
             },
             py::arg("x"), py::arg("y"), py::arg("extended") = false)
        .def("pde_residual", [](const radial::RadialProfileSpec& s, double x, double y, bool extended) {
                 return verify::pde_residual(verify::radial_evaluator(s, extended), x, y).max_normalized();
             },
             py::arg("x"), py::arg("y"), py::arg("extended") = false);

    py::class_<radial::GlobalSolution>(m, "GlobalSolution")
        .def_readonly("n_periods", &radial::GlobalSolution::n_periods)
        .def_readonly("a", &radial::GlobalSolution::a)
        .def_readonly("b", &radial::GlobalSolution::b)
        .def_readonly("c", &radial::GlobalSolution::c)
        .def_property_readonly("c1", [](const radial::GlobalSolution& s) { return s.source.c1; })
        .def_property_readonly("c2", [](const radial::GlobalSolution& s) { return s.source.c2; })
        .def_readonly("condition_residual", &radial::GlobalSolution::condition_residual)
        .def_readonly("flux", &radial::GlobalSolution::flux)
        .def_readonly("flux_condition", &radial::GlobalSolution::flux_condition)
        .def("profile", &radial::global_profile)
        .def("ray_mismatch", [](const radial::GlobalSolution& s, int order) {
            py::list out;
            for (const auto& r : verify::smoothness_across_ray(s, order)) out.append(r.mismatch / r.scale);
            return out;
        });
    m.def("global_periodic_solve", &radial::global_periodic_solve, py::arg("n"), py::arg("seed") = 0.5,
          py::arg("shift") = 0.0);

    m.def("weierstrass_H", &nonradial::weierstrass_H, py::arg("theta"), py::arg("c0"), py::arg("g3"),
          py::arg("shift"));
    m.def("lienard_residual", [](double theta, double c0, double g3, double shift) {
        return verify::lienard_residual(nonradial::make_weierstrass(c0, g3, shift), theta);
    });
    m.def("nonradial_field", [](double x, double y, double c0, double g3, double shift) {
        return as_tuple(nonradial::nonradial_field(nonradial::make_weierstrass(c0, g3, shift), x, y));
    });
    m.def("landau_field", [](double a, double b, double x, double y) {
        return as_tuple(nonradial::landau_field(a, b, x, y));
    });
}
