"""Propagation of zero-interpolating splines and its (in)stability.

A spline vanishing at every knot is determined on ``[x_i, x_{i+1}]`` by
``b_i = s'(x_i)`` and ``c_i = s''(x_i)/2``; zero values at both ends and
C1/C2 continuity give

    b_{i+1} = -2 b_i - h_i c_i
    c_{i+1} = -3 b_i / h_i - 2 c_i
    d_i     = -(b_i / h_i**2 + c_i / h_i)

On a unit mesh the step matrix is ``[[-2, -1], [-3, -2]]`` with
eigenvalues ``-(2 + sqrt 3)`` and ``sqrt 3 - 2``.
"""

from dataclasses import dataclass

import numpy as np

from .exceptions import InputError
from .mesh import as_mesh, make_equidistant
from .spline import CubicSpline

SQRT3 = np.sqrt(3.0)
GROWTH = -(2.0 + SQRT3)
DECAY = SQRT3 - 2.0
SEEDS = {"s1": (1.0, SQRT3), "s2": (1.0, -SQRT3)}


def transfer_matrix_unit() -> np.ndarray:
    return np.array([[-2.0, -1.0], [-3.0, -2.0]])


def transfer_step(h: float) -> np.ndarray:
    """Map ``(b_i, c_i) -> (b_{i+1}, c_{i+1})`` across an interval of length h."""
    return np.array([[-2.0, -h], [-3.0 / h, -2.0]])


def inverse_transfer_step(h: float) -> np.ndarray:
    # det(transfer_step) == 1
    return np.array([[-2.0, h], [3.0 / h, -2.0]])


@dataclass(frozen=True, eq=False)
class ConditioningTrace:
    """Per-knot ``(b_i, c_i)`` and per-interval ``d_i`` of a zero-data spline."""

    knots: np.ndarray
    b: np.ndarray
    c: np.ndarray
    d: np.ndarray
    direction: str
    arithmetic: str
    label: str = ""

    @property
    def n(self) -> int:
        return self.knots.size - 1

    def log_abs_b(self, offset: float = 1.0, scale: float = 1.0) -> np.ndarray:
        return np.log(scale * np.abs(self.b) + offset)

    def to_spline(self) -> CubicSpline:
        zeros = np.zeros(self.n)
        return CubicSpline(self.knots, np.array([zeros, self.b[:-1], self.c[:-1], self.d]))

    def to_csv(self, offset: float = 1.0, scale: float = 1.0, header: bool = True) -> str:
        """Columns ``i, x_i, b_i, c_i, d_i, log_abs_b``; d is empty at the last knot."""
        logs = self.log_abs_b(offset, scale)
        rows = ["i,x_i,b_i,c_i,d_i,log_abs_b"] if header else []
        for i in range(self.n + 1):
            d = f"{self.d[i]:.17g}" if i < self.n else ""
            rows.append(
                f"{i},{self.knots[i]:.17g},{self.b[i]:.17g},{self.c[i]:.17g},{d},{logs[i]:.17g}"
            )
        return "\n".join(rows) + "\n"


def _closure_d(b, c, h):
    return -(b[:-1] / h**2 + c[:-1] / h)


def propagate(mesh, b0: float, c0: float, direction: str = "forward", label: str = "") -> ConditioningTrace:
    """Run the transfer recurrence in floating point.

    ``forward`` starts from ``(b_0, c_0)`` at ``x_0``; ``backward`` treats
    ``(b0, c0)`` as ``(s'(x_n), s''(x_n)/2)`` and walks to the left.
    """
    mesh = as_mesh(mesh)
    h = mesh.gaps
    n = mesh.n
    b = np.empty(n + 1)
    c = np.empty(n + 1)
    if direction == "forward":
        b[0], c[0] = b0, c0
        for i in range(n):
            b[i + 1] = -2.0 * b[i] - h[i] * c[i]
            c[i + 1] = -3.0 * b[i] / h[i] - 2.0 * c[i]
    elif direction == "backward":
        b[n], c[n] = b0, c0
        for i in range(n - 1, -1, -1):
            b[i] = -2.0 * b[i + 1] + h[i] * c[i + 1]
            c[i] = 3.0 * b[i + 1] / h[i] - 2.0 * c[i + 1]
    else:
        raise InputError(f"direction must be 'forward' or 'backward', got {direction!r}")
    return ConditioningTrace(mesh.knots, b, c, _closure_d(b, c, h), direction, "float", label)


def exact_eigenform(n: int, seed: str = "s1") -> ConditioningTrace:
    """Closed-form coefficients on the unit mesh ``0, 1, ..., n``.

    ``s1`` grows like ``(-(2+sqrt 3))**i``, ``s2`` decays like ``(sqrt 3 - 2)**i``.
    """
    if seed not in SEEDS:
        raise InputError(f"seed must be 's1' or 's2', got {seed!r}")
    lam = GROWTH if seed == "s1" else DECAY
    b0, c0 = SEEDS[seed]
    powers = np.power(lam, np.arange(n + 1, dtype=float))
    b = b0 * powers
    c = c0 * powers
    knots = np.arange(n + 1, dtype=float)
    return ConditioningTrace(knots, b, c, _closure_d(b, c, np.ones(n)), "forward", "exact-eigenform", seed)


@dataclass(frozen=True)
class GrowthSummary:
    ratios: np.ndarray
    geometric_mean: float
    skipped: int

    @property
    def flagged(self) -> bool:
        return self.skipped > 0


def growth_rates(trace: ConditioningTrace, start: int = 0, stop: int | None = None) -> GrowthSummary:
    """Ratios of successive ``max(|b_i|, |c_i|)`` between knot ``start`` and ``stop``.

    Steps that involve a zero magnitude are skipped and counted.
    """
    mag = np.maximum(np.abs(trace.b), np.abs(trace.c))[start:stop]
    if mag.size < 2:
        raise InputError("need at least two trace entries")
    prev, nxt = mag[:-1], mag[1:]
    ok = (prev > 0) & (nxt > 0)
    ratios = nxt[ok] / prev[ok]
    gm = float(np.exp(np.mean(np.log(ratios)))) if ratios.size else float("nan")
    return GrowthSummary(ratios, gm, int((~ok).sum()))


def onset_index(trace: ConditioningTrace, run: int = 3) -> int | None:
    """First index after which ``|b_i|`` increases ``run`` steps in a row."""
    mag = np.abs(trace.b)
    up = np.diff(mag) > 0
    for i in range(up.size - run + 1):
        if up[i:i + run].all():
            return i
    return None


def unit_mesh(n: int):
    return make_equidistant(0.0, float(n), n)
