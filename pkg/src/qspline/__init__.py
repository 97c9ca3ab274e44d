"""Cubic spline interpolation with Q-spline and revised not-a-knot end conditions."""

from .bounds import (
    BoundReport,
    bound_clamped,
    bound_piecewise_cubic,
    bound_r_approximate,
    bound_q_spline,
    convergence_order,
    derivative_sup_norm,
    r_heuristic,
    r_q_spline,
    sup_error,
)
from .divdiff import (
    DividedDiffTable,
    NewtonPoly,
    estimate_f2_cubic,
    estimate_f2_quartic,
    newton_eval,
    newton_table,
    omega,
    piecewise_cubic_eval,
    poly_second_derivative_at,
)
from .end_conditions import (
    RNAK,
    ClampedFirst,
    ClampedSecond,
    Natural,
    NotAKnot,
    QSpline,
    RnakJumpReport,
    build_jump_spline,
    build_r_approximate,
    build_spline,
    parse_end_condition,
    q_end_values,
    rnak_jump,
)
from .estimator import CubicSplineInterpolator
from .exceptions import InputError, SingularSystemError
from .mesh import Mesh, MeshStats, make_equidistant, make_random_uniform, mesh_stats
from .spline import (
    CubicSpline,
    MomentSystem,
    assemble_interior_rows,
    build_basis_triple,
    combine,
    curvature_energy,
    evaluate,
    solve_tridiagonal,
    spline_from_moments,
    third_derivative_jump,
)

__all__ = [
    "BoundReport", "ClampedFirst", "ClampedSecond", "CubicSpline", "CubicSplineInterpolator",
    "DividedDiffTable", "InputError", "Mesh", "MeshStats", "MomentSystem", "Natural",
    "NewtonPoly", "NotAKnot", "QSpline", "RNAK", "RnakJumpReport", "SingularSystemError",
    "assemble_interior_rows", "bound_clamped", "bound_piecewise_cubic", "bound_r_approximate",
    "bound_q_spline", "build_basis_triple", "build_jump_spline", "build_r_approximate",
    "build_spline", "combine", "convergence_order", "curvature_energy", "derivative_sup_norm",
    "estimate_f2_cubic", "estimate_f2_quartic", "evaluate", "make_equidistant",
    "make_random_uniform", "mesh_stats", "newton_eval", "newton_table", "omega",
    "parse_end_condition", "piecewise_cubic_eval", "poly_second_derivative_at",
    "q_end_values", "r_heuristic", "r_q_spline", "rnak_jump", "solve_tridiagonal",
    "spline_from_moments", "sup_error", "third_derivative_jump",
]
