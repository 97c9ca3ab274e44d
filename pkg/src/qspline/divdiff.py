"""Newton divided differences and the second-derivative estimators built on them."""

from dataclasses import dataclass

import numpy as np

from .exceptions import InputError
from .mesh import as_mesh
from .validation import as_float_array, check_distinct


@dataclass(frozen=True, eq=False)
class DividedDiffTable:
    """Triangular divided-difference table.

    ``columns[k][i]`` holds ``f[x_i, ..., x_{i+k}]``; column ``k`` has
    ``len(points) - k`` entries.
    """

    points: np.ndarray
    columns: tuple

    @property
    def order(self) -> int:
        return len(self.columns) - 1

    def top(self, k: int) -> float:
        """``f[x_0, ..., x_k]``."""
        return float(self.columns[k][0])

    @property
    def top_diagonal(self) -> np.ndarray:
        return np.array([c[0] for c in self.columns])

    def newton_poly(self) -> "NewtonPoly":
        return NewtonPoly(self.points.copy(), self.top_diagonal)

    def check_recurrence(self) -> bool:
        """Recompute every entry from its two parents and compare bitwise."""
        x = self.points
        for k in range(1, len(self.columns)):
            prev = self.columns[k - 1]
            redo = (prev[1:] - prev[:-1]) / (x[k:] - x[:-k])
            if not np.array_equal(redo, self.columns[k]):
                return False
        return True

    def to_csv(self) -> str:
        lines = []
        for i, xi in enumerate(self.points):
            row = [f"{xi:.17g}"] + [f"{c[i]:.17g}" for c in self.columns if i < c.size]
            lines.append(",".join(row))
        return "\n".join(lines) + "\n"


@dataclass(frozen=True, eq=False)
class NewtonPoly:
    """``p(x) = sum_k coeffs[k] * prod_{j<k} (x - centers[j])``."""

    centers: np.ndarray
    coeffs: np.ndarray

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    def __call__(self, x):
        return newton_eval(self, x)


def newton_table(xs, ys) -> DividedDiffTable:
    xs = check_distinct(xs)
    ys = as_float_array(ys, "ordinates")
    if xs.size == 0 or xs.shape != ys.shape:
        raise InputError("need equally many (>= 1) abscissas and ordinates")
    cols = [ys.copy()]
    for k in range(1, xs.size):
        prev = cols[-1]
        cols.append((prev[1:] - prev[:-1]) / (xs[k:] - xs[:-k]))
    for c in cols:
        c.setflags(write=False)
    xs.setflags(write=False)
    return DividedDiffTable(xs, tuple(cols))


def newton_poly(xs, ys) -> NewtonPoly:
    return newton_table(xs, ys).newton_poly()


def _newton_derivs(p: NewtonPoly, x):
    # nested evaluation carrying p, p' and p'' along (product rule)
    x = np.asarray(x, dtype=float)
    v = np.full_like(x, p.coeffs[-1])
    d1 = np.zeros_like(x)
    d2 = np.zeros_like(x)
    for k in range(p.coeffs.size - 2, -1, -1):
        t = x - p.centers[k]
        d2 = d2 * t + 2.0 * d1
        d1 = d1 * t + v
        v = v * t + p.coeffs[k]
    return v, d1, d2


def newton_eval(p: NewtonPoly, x):
    """Evaluate the Newton form by nested multiplication."""
    v = _newton_derivs(p, x)[0]
    return v[()] if v.ndim == 0 else v


def poly_second_derivative_at(p: NewtonPoly, x):
    """Exact ``p''(x)``; zero for polynomials of degree below two."""
    if p.degree < 2:
        return 0.0 if np.ndim(x) == 0 else np.zeros(np.shape(x))
    d2 = _newton_derivs(p, x)[2]
    return d2[()] if d2.ndim == 0 else d2


def omega(xs, x):
    """Node polynomial ``prod_j (x - xs[j])``."""
    xs = np.asarray(xs, dtype=float)
    x = np.asarray(x, dtype=float)
    out = np.prod(x[..., None] - xs, axis=-1)
    return out[()] if out.ndim == 0 else out


def _end_estimate(xs, ys, npts, end):
    xs = as_float_array(xs, "abscissas")
    ys = as_float_array(ys, "ordinates")
    if xs.size != npts or ys.size != npts:
        raise InputError(f"expected exactly {npts} points, got {xs.size} and {ys.size}")
    if np.any(np.diff(xs) <= 0):
        raise InputError("points must be distinct and ascending")
    if end not in ("left", "right"):
        raise InputError(f"end must be 'left' or 'right', got {end!r}")
    at = xs[0] if end == "left" else xs[-1]
    return float(poly_second_derivative_at(newton_poly(xs, ys), at))


def estimate_f2_cubic(xs, ys, end="left") -> float:
    """Second derivative at an end point of the cubic through four points.

    The error against ``f''`` is at most ``11/12 * |f''''| * h**2``.
    """
    return _end_estimate(xs, ys, 4, end)


def estimate_f2_quartic(xs, ys, end="left") -> float:
    """Second derivative at an end point of the quartic through five points.

    Equivalent to applying :func:`estimate_f2_cubic` to the data after
    subtracting ``rho * (x - x_end)**4`` with ``rho`` the fourth divided
    difference.
    """
    return _end_estimate(xs, ys, 5, end)


def piecewise_cubic_eval(mesh, ys, x):
    """Local cubic interpolation through four neighbouring knots.

    On ``(x_i, x_{i+1})`` with ``1 <= i <= n-2`` the cubic through
    ``x_{i-1}..x_{i+2}`` is used; the first and last interval use the
    first and last four knots.
    """
    knots = as_mesh(mesh).knots
    ys = as_float_array(ys, "ordinates")
    if knots.size < 4:
        raise InputError("piecewise cubic interpolation needs at least 4 knots")
    if ys.shape != knots.shape:
        raise InputError("ordinates do not match the mesh")
    x = np.asarray(x, dtype=float)
    if np.any((x < knots[0]) | (x > knots[-1])):
        raise InputError("evaluation point outside the mesh")
    n = knots.size - 1
    idx = np.clip(np.searchsorted(knots, x, side="right") - 1, 0, n - 1)
    start = np.clip(idx - 1, 0, n - 3)
    out = np.empty(x.shape)
    for s in np.unique(start):
        sel = start == s
        p = newton_poly(knots[s:s + 4], ys[s:s + 4])
        out[sel] = newton_eval(p, x[sel])
    hit = np.searchsorted(knots, x)
    on_knot = (hit <= n) & (knots[np.minimum(hit, n)] == x)
    out[on_knot] = ys[hit[on_knot]]
    return out[()] if out.ndim == 0 else out
