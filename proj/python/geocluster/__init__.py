"""Python bindings for the geocluster clustering solvers."""

from ._core import (
    brute_kcenter_continuous,
    brute_ksupplier,
    brute_nukc_euclidean,
    c_d,
    crossing_check,
    gonzalez_2approx,
    hs_3approx,
    jl_project,
    meb,
    run_cli,
    solve_kcenter,
    solve_ksupplier,
    solve_nukc_euclidean,
    solve_nukc_general,
    vc_gadget,
    voronoi_separator,
)

__all__ = [
    "brute_kcenter_continuous",
    "brute_ksupplier",
    "brute_nukc_euclidean",
    "c_d",
    "crossing_check",
    "gonzalez_2approx",
    "hs_3approx",
    "jl_project",
    "meb",
    "run_cli",
    "solve_kcenter",
    "solve_ksupplier",
    "solve_nukc_euclidean",
    "solve_nukc_general",
    "vc_gadget",
    "voronoi_separator",
]
