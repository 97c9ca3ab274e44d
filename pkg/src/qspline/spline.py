"""Moment-based cubic splines: assembly, tridiagonal solve, evaluation.

A spline on ``x_0 < ... < x_n`` is stored in local power form,
``s(x) = a_i + b_i t + c_i t**2 + d_i t**3`` with ``t = x - x_i`` on
``[x_i, x_{i+1}]``.  The moments ``M_i = s''(x_i)`` are the unknowns of a
tridiagonal system whose interior rows come from C2 continuity.
"""

from dataclasses import dataclass, replace

import numpy as np

from .exceptions import InputError
from .mesh import Mesh, as_mesh
from .validation import as_float_array


@dataclass(frozen=True, eq=False)
class MomentSystem:
    """Tridiagonal system ``sub[i] M_{i-1} + diag[i] M_i + sup[i] M_{i+1} = rhs[i]``.

    All four arrays have length ``n + 1``; ``sub[0]`` and ``sup[n]`` are
    unused.  Boundary rows are NaN until an end condition fills them.
    """

    mesh: Mesh
    sub: np.ndarray
    diag: np.ndarray
    sup: np.ndarray
    rhs: np.ndarray

    @property
    def mu(self):
        return self.sub[1:-1]

    @property
    def lam(self):
        return self.sup[1:-1]

    @property
    def has_boundary_rows(self) -> bool:
        return bool(np.isfinite(self.diag[[0, -1]]).all())

    def with_end_moments(self, kappa0: float, kappan: float) -> "MomentSystem":
        """Boundary rows ``M_0 = kappa0`` and ``M_n = kappan``."""
        sub, diag, sup, rhs = (v.copy() for v in (self.sub, self.diag, self.sup, self.rhs))
        diag[0] = diag[-1] = 1.0
        sup[0] = sub[-1] = 0.0
        rhs[0], rhs[-1] = kappa0, kappan
        return replace(self, sub=sub, diag=diag, sup=sup, rhs=rhs)

    def with_end_slopes(self, ys, d0: float, dn: float) -> "MomentSystem":
        """Boundary rows from ``s'(x_0) = d0`` and ``s'(x_n) = dn``."""
        h = self.mesh.gaps
        ys = np.asarray(ys, dtype=float)
        sub, diag, sup, rhs = (v.copy() for v in (self.sub, self.diag, self.sup, self.rhs))
        diag[0], sup[0] = 2.0, 1.0
        rhs[0] = 6.0 / h[0] * ((ys[1] - ys[0]) / h[0] - d0)
        sub[-1], diag[-1] = 1.0, 2.0
        rhs[-1] = 6.0 / h[-1] * (dn - (ys[-1] - ys[-2]) / h[-1])
        return replace(self, sub=sub, diag=diag, sup=sup, rhs=rhs)

    def interior_matrix(self) -> np.ndarray:
        """Dense ``(n-1) x (n-1)`` matrix acting on ``M_1..M_{n-1}``."""
        m = self.mesh.n - 1
        A = np.diag(self.diag[1:-1])
        if m > 1:
            A += np.diag(self.sup[1:-2], 1) + np.diag(self.sub[2:-1], -1)
        return A


def assemble_interior_rows(mesh, ys) -> MomentSystem:
    """Rows ``mu_i M_{i-1} + 2 M_i + lam_i M_{i+1} = 6 f[x_{i-1}, x_i, x_{i+1}]``."""
    mesh = as_mesh(mesh)
    ys = as_float_array(ys, "ordinates")
    if mesh.n < 2:
        raise InputError("the moment system needs at least 3 knots")
    if ys.shape != mesh.knots.shape:
        raise InputError("ordinates do not match the mesh")
    x, h = mesh.knots, mesh.gaps
    span = x[2:] - x[:-2]
    n = mesh.n
    sub = np.full(n + 1, np.nan)
    sup = np.full(n + 1, np.nan)
    diag = np.full(n + 1, np.nan)
    rhs = np.full(n + 1, np.nan)
    sub[1:-1] = h[:-1] / span
    sup[1:-1] = h[1:] / span
    diag[1:-1] = 2.0
    slopes = np.diff(ys) / h
    rhs[1:-1] = 6.0 * np.diff(slopes) / span
    return MomentSystem(mesh, sub, diag, sup, rhs)


def thomas(sub, diag, sup, rhs):
    """Forward elimination / back substitution for a tridiagonal system.

    No pivoting: the callers only pass diagonally dominant matrices.
    """
    n = len(diag)
    c = np.empty(n)
    d = np.empty(n)
    c[0] = sup[0] / diag[0] if n > 1 else 0.0
    d[0] = rhs[0] / diag[0]
    for i in range(1, n):
        denom = diag[i] - sub[i] * c[i - 1]
        c[i] = sup[i] / denom if i < n - 1 else 0.0
        d[i] = (rhs[i] - sub[i] * d[i - 1]) / denom
    out = np.empty(n)
    out[-1] = d[-1]
    for i in range(n - 2, -1, -1):
        out[i] = d[i] - c[i] * out[i + 1]
    return out


def solve_tridiagonal(system: MomentSystem) -> np.ndarray:
    """Solve for the moment vector ``M_0..M_n``."""
    if not system.has_boundary_rows:
        raise InputError("moment system has no boundary rows; apply an end condition first")
    return thomas(system.sub, system.diag, system.sup, system.rhs)


class CubicSpline:
    """Piecewise cubic in local power form.

    Parameters
    ----------
    mesh : Mesh or array_like
        Knots ``x_0 < ... < x_n``.
    coeffs : ndarray, shape (4, n)
        Rows ``a, b, c, d`` of the local expansion on each interval.
    """

    def __init__(self, mesh, coeffs):
        self.mesh = as_mesh(mesh)
        coeffs = np.array(coeffs, dtype=float)
        if coeffs.shape != (4, self.mesh.n):
            raise InputError(f"coeffs must have shape (4, {self.mesh.n}), got {coeffs.shape}")
        coeffs.setflags(write=False)
        self.coeffs = coeffs

    def __repr__(self):
        return f"CubicSpline(n={self.mesh.n}, [{self.mesh.a:g}, {self.mesh.b:g}])"

    @property
    def knots(self):
        return self.mesh.knots

    @property
    def a(self):
        return self.coeffs[0]

    @property
    def b(self):
        return self.coeffs[1]

    @property
    def c(self):
        return self.coeffs[2]

    @property
    def d(self):
        return self.coeffs[3]

    @property
    def moments(self) -> np.ndarray:
        h = self.mesh.gaps
        last = 2.0 * self.c[-1] + 6.0 * self.d[-1] * h[-1]
        return np.append(2.0 * self.c, last)

    def values_at_knots(self) -> np.ndarray:
        h = self.mesh.gaps
        last = self.a[-1] + h[-1] * (self.b[-1] + h[-1] * (self.c[-1] + h[-1] * self.d[-1]))
        return np.append(self.a, last)

    def __call__(self, x, k=0, extrapolate=False):
        return evaluate(self, x, k, extrapolate)

    def __add__(self, other):
        return combine_linear([(1.0, self), (1.0, other)])

    def __mul__(self, scalar):
        return CubicSpline(self.mesh, float(scalar) * self.coeffs)

    __rmul__ = __mul__

    def interval_index(self, x):
        """Interval holding ``x``; right-continuous at interior knots."""
        idx = np.searchsorted(self.knots, x, side="right") - 1
        return np.clip(idx, 0, self.mesh.n - 1)

    def continuity_defects(self) -> np.ndarray:
        """Relative jumps of s, s', s'' at the interior knots (3 numbers)."""
        h = self.mesh.gaps[:-1]
        a, b, c, d = (r[:-1] for r in self.coeffs)
        left = np.array([
            a + h * (b + h * (c + h * d)),
            b + h * (2 * c + 3 * h * d),
            2 * c + 6 * h * d,
        ])
        right = np.array([self.a[1:], self.b[1:], 2 * self.c[1:]])
        if left.shape[1] == 0:
            return np.zeros(3)
        scale = np.maximum(np.abs(left).max(axis=1), np.abs(right).max(axis=1))
        # a spline vanishing at the knots still has a natural size: h*s'
        scale[0] = max(scale[0], np.abs(h * b).max())
        scale[1] = max(scale[1], np.abs(h * c).max())
        scale[scale == 0] = 1.0
        return np.abs(left - right).max(axis=1) / scale

    def to_csv(self) -> str:
        rows = ["x,a,b,c,d"]
        for i in range(self.mesh.n):
            vals = (self.knots[i],) + tuple(self.coeffs[:, i])
            rows.append(",".join(f"{v:.17g}" for v in vals))
        return "\n".join(rows) + "\n"


def evaluate(s: CubicSpline, x, k=0, extrapolate=False):
    """k-th derivative (``0 <= k <= 3``) of ``s`` at ``x``."""
    if k not in (0, 1, 2, 3):
        raise InputError(f"derivative order must be 0..3, got {k}")
    x = np.asarray(x, dtype=float)
    if not extrapolate and np.any((x < s.knots[0]) | (x > s.knots[-1])):
        raise InputError("evaluation point outside the spline domain")
    i = s.interval_index(x)
    t = x - s.knots[i]
    a, b, c, d = (r[i] for r in s.coeffs)
    if k == 0:
        out = a + t * (b + t * (c + t * d))
    elif k == 1:
        out = b + t * (2.0 * c + 3.0 * t * d)
    elif k == 2:
        out = 2.0 * c + 6.0 * t * d
    else:
        out = 6.0 * d
    return out[()] if np.ndim(out) == 0 else out


def spline_from_moments(mesh, ys, M) -> CubicSpline:
    mesh = as_mesh(mesh)
    ys = as_float_array(ys, "ordinates")
    M = as_float_array(M, "moments")
    if not (ys.shape == M.shape == mesh.knots.shape):
        raise InputError("mesh, ordinates and moments must have equal length")
    h = mesh.gaps
    b = np.diff(ys) / h - h * (2.0 * M[:-1] + M[1:]) / 6.0
    return CubicSpline(mesh, np.array([ys[:-1], b, M[:-1] / 2.0, np.diff(M) / (6.0 * h)]))


def third_derivative_jump(s: CubicSpline, i: int) -> float:
    """``s'''(x_i+) - s'''(x_i-)`` at an interior knot."""
    if not 1 <= i <= s.mesh.n - 1:
        raise InputError(f"knot index {i} is not interior")
    return 6.0 * (s.d[i] - s.d[i - 1])


def end_jumps(s: CubicSpline) -> np.ndarray:
    """Third-derivative jumps at ``x_1`` and ``x_{n-1}``."""
    n = s.mesh.n
    return np.array([third_derivative_jump(s, 1), third_derivative_jump(s, n - 1)])


def curvature_energy(s: CubicSpline) -> float:
    """Exact ``integral of s''(x)**2`` (s'' is piecewise linear)."""
    M = s.moments
    h = s.mesh.gaps
    return float(np.sum(h * (M[:-1] ** 2 + M[:-1] * M[1:] + M[1:] ** 2)) / 3.0)


def clamped_second(mesh, ys, kappa0, kappan) -> CubicSpline:
    """Direct build with prescribed end moments (no basis triple)."""
    mesh = as_mesh(mesh)
    if mesh.n == 1:
        return spline_from_moments(mesh, ys, [kappa0, kappan])
    system = assemble_interior_rows(mesh, ys).with_end_moments(kappa0, kappan)
    return spline_from_moments(mesh, ys, solve_tridiagonal(system))


def clamped_first(mesh, ys, d0, dn) -> CubicSpline:
    mesh = as_mesh(mesh)
    ys = as_float_array(ys, "ordinates")
    if mesh.n == 1:
        h = mesh.gaps[0]
        slope = (ys[1] - ys[0]) / h
        # [[2, 1], [1, 2]] @ (M0, Mn) = 6/h * (slope - d0, dn - slope)
        r0, r1 = 6.0 / h * (slope - d0), 6.0 / h * (dn - slope)
        M0, Mn = (2 * r0 - r1) / 3.0, (2 * r1 - r0) / 3.0
        return spline_from_moments(mesh, ys, [M0, Mn])
    system = assemble_interior_rows(mesh, ys).with_end_slopes(ys, d0, dn)
    return spline_from_moments(mesh, ys, solve_tridiagonal(system))


def build_basis_triple(mesh, ys):
    """Natural spline of the data plus the two zero-data end-moment splines.

    Returns ``(s_nat, s1, s2)`` with ``s1''(x_0) = 1, s1''(x_n) = 0`` and
    ``s2''(x_0) = 0, s2''(x_n) = 1``; any spline with end moments
    ``(k0, kn)`` equals ``s_nat + k0 * s1 + kn * s2``.
    """
    mesh = as_mesh(mesh)
    ys = as_float_array(ys, "ordinates")
    zeros = np.zeros_like(ys)
    s_nat = clamped_second(mesh, ys, 0.0, 0.0)
    s1 = clamped_second(mesh, zeros, 1.0, 0.0)
    s2 = clamped_second(mesh, zeros, 0.0, 1.0)
    return s_nat, s1, s2


def combine_linear(terms) -> CubicSpline:
    """``sum(w * s for w, s in terms)`` on a shared mesh."""
    terms = list(terms)
    mesh = terms[0][1].mesh
    for _, s in terms[1:]:
        if s.mesh != mesh:
            raise InputError("cannot combine splines on different meshes")
    coeffs = sum(float(w) * s.coeffs for w, s in terms)
    return CubicSpline(mesh, coeffs)


def combine(s_nat, s1, s2, alpha: float, beta: float) -> CubicSpline:
    """``s_nat + alpha * s1 + beta * s2``."""
    return combine_linear([(1.0, s_nat), (alpha, s1), (beta, s2)])
