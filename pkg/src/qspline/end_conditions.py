"""End conditions: natural, clamped, not-a-knot, Q-spline and revised not-a-knot.

Every condition that can be phrased through second derivatives or
third-derivative jumps is built from the basis triple ``(s_nat, s1, s2)``
of :func:`qspline.spline.build_basis_triple`; the clamped-first spline
uses a directly modified moment system.
"""

from dataclasses import dataclass

import numpy as np

from .divdiff import estimate_f2_cubic, estimate_f2_quartic, newton_table
from .exceptions import InputError, SingularSystemError
from .mesh import as_mesh
from .spline import (
    CubicSpline,
    build_basis_triple,
    clamped_first,
    combine,
    end_jumps,
)
from .validation import as_float_array


@dataclass(frozen=True)
class Natural:
    name = "natural"
    min_intervals = 2


@dataclass(frozen=True)
class ClampedFirst:
    d0: float
    dn: float
    name = "clamped-first"
    min_intervals = 2


@dataclass(frozen=True)
class ClampedSecond:
    kappa0: float
    kappan: float
    name = "clamped-second"
    min_intervals = 2


@dataclass(frozen=True)
class NotAKnot:
    name = "nak"
    min_intervals = 3


@dataclass(frozen=True)
class QSpline:
    name = "q"
    min_intervals = 4


@dataclass(frozen=True)
class RNAK:
    safeguard: bool = True
    name = "rnak"
    min_intervals = 4


EndCondition = Natural | ClampedFirst | ClampedSecond | NotAKnot | QSpline | RNAK

END_CONDITION_NAMES = (
    "natural", "clamped-first", "clamped-second", "nak", "q", "rnak", "rnak-unsafe",
)


def parse_end_condition(name: str, values=None) -> EndCondition:
    """Map a CLI string to an end condition.

    ``values`` supplies the two end derivatives for the clamped variants.
    """
    key = name.strip().lower()
    if key in ("natural", "nat"):
        return Natural()
    if key in ("nak", "not-a-knot"):
        return NotAKnot()
    if key == "q":
        return QSpline()
    if key == "rnak":
        return RNAK(safeguard=True)
    if key == "rnak-unsafe":
        return RNAK(safeguard=False)
    if key in ("clamped-first", "clamped-second"):
        if values is None or len(values) != 2:
            raise InputError(f"{key} needs two end values")
        v0, vn = (float(v) for v in values)
        if not (np.isfinite(v0) and np.isfinite(vn)):
            raise InputError("end values must be finite")
        return ClampedFirst(v0, vn) if key == "clamped-first" else ClampedSecond(v0, vn)
    raise InputError(f"unknown end condition {name!r}; choose from {', '.join(END_CONDITION_NAMES)}")


def end_condition_label(ec: EndCondition) -> str:
    if isinstance(ec, RNAK) and not ec.safeguard:
        return "rnak-unsafe"
    return ec.name


@dataclass(frozen=True)
class RnakJumpReport:
    """How the third-derivative jump target at ``x_1`` (or ``x_{n-1}``) was formed.

    ``f4`` and ``f5`` are the fourth and fifth divided differences oriented
    so that the left-end rule applies verbatim (the fifth one changes sign
    under reflection); ``f5`` is None when fewer than six knots exist or the
    safeguard is off.
    """

    end: str
    rho_raw: float
    rho_adjusted: float
    damping: float
    delta: float
    f4: float
    f5: float | None
    reduced: bool
    safeguard: bool


def _oriented_end(x, y, end, npts):
    """First ``npts`` points seen from the requested end, as a left end."""
    if end == "left":
        return x[:npts], y[:npts]
    if end == "right":
        return -x[::-1][:npts], y[::-1][:npts]
    raise InputError(f"end must be 'left' or 'right', got {end!r}")


def rnak_jump(mesh, ys, end="left", safeguard=True, damp_always=False) -> RnakJumpReport:
    """Jump target ``delta = 12 rho (x_2 - x_0)`` with the optional safeguard.

    With the safeguard and ``f4 * f5 > 0`` the estimate ``rho = f4`` is
    reduced to ``f4 - 5 f5 (x_2 - x_1)`` (zero if that flips its sign) and
    the jump is multiplied by ``min(1, |f4| / (5 |f5| (x_4 - x_0)))``.  By
    default the damping factor accompanies the reduction only; pass
    ``damp_always=True`` to damp whenever ``f5`` is available.
    """
    mesh = as_mesh(mesh)
    ys = as_float_array(ys, "ordinates")
    if mesh.n < 4:
        raise InputError("the RNAK spline needs at least 5 knots")
    if ys.shape != mesh.knots.shape:
        raise InputError("ordinates do not match the mesh")
    use_f5 = safeguard and mesh.n >= 5
    x, y = _oriented_end(mesh.knots, ys, end, 6 if use_f5 else 5)
    table = newton_table(x, y)
    f4 = table.top(4)
    f5 = table.top(5) if use_f5 else None
    rho = f4
    damping = 1.0
    reduced = False
    if f5 is not None:
        reduced = f4 * f5 > 0
        if reduced:
            rho = f4 - 5.0 * f5 * (x[2] - x[1])
            if rho * f4 < 0:
                rho = 0.0
        if f5 != 0.0 and (reduced or damp_always):
            damping = min(1.0, abs(f4) / (5.0 * abs(f5) * (x[4] - x[0])))
    delta = 12.0 * rho * (x[2] - x[0]) * damping
    return RnakJumpReport(end, f4, rho, damping, delta, f4, f5, reduced, bool(safeguard))


def q_end_values(mesh, ys):
    """Quartic-interpolant estimates of ``f''`` at both ends."""
    mesh = as_mesh(mesh)
    ys = as_float_array(ys, "ordinates")
    if mesh.n < 4:
        raise InputError("the Q-spline needs at least 5 knots")
    x = mesh.knots
    return (
        estimate_f2_quartic(x[:5], ys[:5], "left"),
        estimate_f2_quartic(x[-5:], ys[-5:], "right"),
    )


def cubic_end_values(mesh, ys):
    """Cubic-interpolant estimates of ``f''`` at both ends (R = 11/12)."""
    mesh = as_mesh(mesh)
    ys = as_float_array(ys, "ordinates")
    if mesh.n < 3:
        raise InputError("cubic end estimates need at least 4 knots")
    x = mesh.knots
    return (
        estimate_f2_cubic(x[:4], ys[:4], "left"),
        estimate_f2_cubic(x[-4:], ys[-4:], "right"),
    )


def solve_2x2(G, r):
    """Gaussian elimination with partial pivoting; raises when singular."""
    G = np.asarray(G, dtype=float)
    r = np.asarray(r, dtype=float)
    scale = np.abs(G).max()
    if scale == 0.0:
        raise SingularSystemError("2x2 end system is zero")
    p = 0 if abs(G[0, 0]) >= abs(G[1, 0]) else 1
    q = 1 - p
    piv = G[p, 0]
    if abs(piv) <= 1e-14 * scale:
        raise SingularSystemError("2x2 end system is singular")
    m = G[q, 0] / piv
    u = G[q, 1] - m * G[p, 1]
    if abs(u) <= 1e-14 * scale:
        raise SingularSystemError("2x2 end system is singular")
    beta = (r[q] - m * r[p]) / u
    alpha = (r[p] - G[p, 1] * beta) / piv
    return alpha, beta


def build_jump_spline(mesh, ys, targets, triple=None) -> CubicSpline:
    """Interpolant whose s''' jumps at ``x_1`` and ``x_{n-1}`` equal ``targets``.

    ``targets = (0, 0)`` is the not-a-knot spline.
    """
    mesh = as_mesh(mesh)
    if mesh.n < 3:
        raise InputError("jump conditions need at least 4 knots")
    s_nat, s1, s2 = triple if triple is not None else build_basis_triple(mesh, ys)
    G = np.column_stack([end_jumps(s1), end_jumps(s2)])
    alpha, beta = solve_2x2(G, np.asarray(targets, dtype=float) - end_jumps(s_nat))
    return combine(s_nat, s1, s2, alpha, beta)


def build_r_approximate(mesh, ys, kappa0, kappan, triple=None) -> CubicSpline:
    """Spline with ``s''(x_0) = kappa0`` and ``s''(x_n) = kappan``.

    When the kappas approximate ``f''`` within ``R * |f''''| * h**2`` this is
    an R-approximate clamped natural spline.
    """
    mesh = as_mesh(mesh)
    if mesh.n < 2:
        raise InputError("need at least 3 knots")
    s_nat, s1, s2 = triple if triple is not None else build_basis_triple(mesh, ys)
    return combine(s_nat, s1, s2, kappa0, kappan)


def build_spline(mesh, ys, ec: EndCondition = None, triple=None) -> CubicSpline:
    """Interpolating C2 cubic spline with the given end condition.

    ``triple`` may carry a precomputed ``build_basis_triple(mesh, ys)`` so
    several end conditions can share one factorisation.
    """
    mesh = as_mesh(mesh)
    ys = as_float_array(ys, "ordinates")
    ec = Natural() if ec is None else ec
    if ys.shape != mesh.knots.shape:
        raise InputError(f"got {mesh.knots.size} knots but {ys.size} ordinates")
    if mesh.n < ec.min_intervals:
        raise InputError(
            f"{end_condition_label(ec)} needs at least {ec.min_intervals + 1} knots, got {mesh.n + 1}"
        )
    if isinstance(ec, ClampedFirst):
        return clamped_first(mesh, ys, ec.d0, ec.dn)
    if triple is None:
        triple = build_basis_triple(mesh, ys)
    if isinstance(ec, Natural):
        return triple[0]
    if isinstance(ec, ClampedSecond):
        return build_r_approximate(mesh, ys, ec.kappa0, ec.kappan, triple)
    if isinstance(ec, QSpline):
        return build_r_approximate(mesh, ys, *q_end_values(mesh, ys), triple)
    if isinstance(ec, NotAKnot):
        return build_jump_spline(mesh, ys, (0.0, 0.0), triple)
    if isinstance(ec, RNAK):
        targets = [rnak_jump(mesh, ys, end, ec.safeguard).delta for end in ("left", "right")]
        return build_jump_spline(mesh, ys, targets, triple)
    raise InputError(f"unsupported end condition {ec!r}")
