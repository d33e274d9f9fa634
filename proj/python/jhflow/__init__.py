"""Exact self-similar solutions of the planar stationary Navier-Stokes equations."""

from ._jhflow import (
    GlobalSolution,
    NoBracketError,
    PoleProximityError,
    RadialProfile,
    classify,
    ellint_F,
    ellint_K,
    global_periodic_solve,
    jacobi_am,
    jacobi_dn,
    landau_field,
    lienard_residual,
    nonradial_field,
    solve_cubic,
    weierstrass_H,
    weierstrass_p,
    weierstrass_p_prime,
)

__all__ = [
    "GlobalSolution",
    "NoBracketError",
    "PoleProximityError",
    "RadialProfile",
    "classify",
    "ellint_F",
    "ellint_K",
    "global_periodic_solve",
    "jacobi_am",
    "jacobi_dn",
    "landau_field",
    "lienard_residual",
    "nonradial_field",
    "solve_cubic",
    "weierstrass_H",
    "weierstrass_p",
    "weierstrass_p_prime",
]
