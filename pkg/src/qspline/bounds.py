"""A-priori error bounds, measured errors and convergence-order fits."""

import json
from dataclasses import asdict, dataclass

import numpy as np

from .divdiff import DividedDiffTable
from .exceptions import InputError
from .spline import CubicSpline

CLAMPED_CONSTANT = 5.0 / 384.0
PIECEWISE_INTERIOR_CONSTANT = 3.0 / 128.0
PIECEWISE_BOUNDARY_CONSTANT = 1.0 / 24.0
CUBIC_ESTIMATE_R = 11.0 / 12.0
R_CAP = 11.0 / 6.0


@dataclass(frozen=True)
class BoundReport:
    """Bound ``value = (constant + R/8) * M4 * h**4`` (``R`` may be absent)."""

    kind: str
    constant: float
    R: float | None
    h: float
    M4: float
    M5: float | None
    value: float
    branch: str | None = None

    def to_dict(self):
        d = asdict(self)
        if d["M5"] is not None and not np.isfinite(d["M5"]):
            d["M5"] = "inf"
        return d

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)


def _check(h, M4):
    if not h > 0:
        raise InputError(f"mesh size must be positive, got {h}")
    if M4 < 0:
        raise InputError(f"derivative norm must be nonnegative, got {M4}")


def bound_clamped(h: float, M4: float) -> BoundReport:
    """``5/384 * M4 * h**4`` for the clamped and clamped natural splines."""
    _check(h, M4)
    return BoundReport("clamped", CLAMPED_CONSTANT, None, h, M4, None, CLAMPED_CONSTANT * M4 * h**4)


def bound_piecewise_cubic(h: float, M4: float, region: str = "interior") -> BoundReport:
    _check(h, M4)
    if region == "interior":
        const = PIECEWISE_INTERIOR_CONSTANT
    elif region == "boundary":
        const = PIECEWISE_BOUNDARY_CONSTANT
    else:
        raise InputError(f"region must be 'interior' or 'boundary', got {region!r}")
    return BoundReport(f"piecewise-cubic-{region}", const, None, h, M4, None, const * M4 * h**4)


def bound_r_approximate(h: float, M4: float, R: float, M5=None, branch=None) -> BoundReport:
    """Bound for an R-approximate clamped natural spline."""
    _check(h, M4)
    if R < 0:
        raise InputError(f"R must be nonnegative, got {R}")
    value = (CLAMPED_CONSTANT + R / 8.0) * M4 * h**4
    return BoundReport("r-approximate", CLAMPED_CONSTANT, float(R), h, M4, M5, value, branch)


def r_q_spline(h: float, M4: float, M5: float) -> float:
    """``min(11/6, 5 h M5 / (12 M4))``; ``M5 = inf`` when f''''' is unavailable."""
    return _r_q_spline(h, M4, M5)[0]


def _r_q_spline(h, M4, M5):
    if M4 < 0:
        raise InputError("M4 must be nonnegative")
    if M4 == 0:
        return 0.0, "zero-fourth-derivative"
    if not np.isfinite(M5):
        return R_CAP, "cap"
    ratio = 5.0 * h * M5 / (12.0 * M4)
    return (R_CAP, "cap") if R_CAP <= ratio else (ratio, "fifth-derivative")


def bound_q_spline(h: float, M4: float, M5: float) -> BoundReport:
    """Q-spline bound with R taken from :func:`r_q_spline`."""
    R, branch = _r_q_spline(h, M4, M5)
    rep = bound_r_approximate(h, M4, R, M5=float(M5), branch=branch)
    return BoundReport("q-spline", rep.constant, rep.R, h, M4, float(M5), rep.value, branch)


def r_heuristic(table_left: DividedDiffTable) -> float:
    """Estimate R from the fourth and fifth divided differences at one end.

    ``min(11/6, 25 h |f[x0..x5]| / (12 |f[x0..x4]|))`` with ``h`` the largest
    of the five gaps.  A vanishing fourth difference gives the cap 11/6.
    """
    if table_left.order < 5:
        raise InputError("the heuristic needs a table over at least 6 points")
    x = table_left.points[:6]
    h = float(np.max(np.diff(x)))
    f4 = abs(table_left.top(4))
    f5 = abs(table_left.top(5))
    if f4 == 0.0:
        return R_CAP
    return min(R_CAP, 25.0 * h * f5 / (12.0 * f4))


def sample_grid(knots, samples_per_interval=256) -> np.ndarray:
    """Knots plus ``samples_per_interval`` equispaced points inside each interval."""
    if samples_per_interval < 2:
        raise InputError("need at least 2 samples per interval")
    knots = np.asarray(knots, dtype=float)
    t = np.arange(1, samples_per_interval + 1) / (samples_per_interval + 1)
    inner = knots[:-1, None] + np.diff(knots)[:, None] * t
    return np.sort(np.concatenate([knots, inner.ravel()]))


def sup_error(s: CubicSpline, f, samples_per_interval: int = 256) -> float:
    """Sampled ``max |s(x) - f(x)|`` over the spline's domain."""
    x = sample_grid(s.knots, samples_per_interval)
    return float(np.max(np.abs(s(x) - f(x))))


def convergence_order(errors, h_values) -> float:
    """Least-squares slope of ``log(error)`` against ``log(h)``."""
    e = np.asarray(errors, dtype=float)
    h = np.asarray(h_values, dtype=float)
    if e.size < 2 or e.shape != h.shape:
        raise InputError("need at least two (error, h) pairs")
    if np.any(e <= 0) or np.any(h <= 0):
        raise InputError("errors and mesh sizes must be positive")
    return float(np.polyfit(np.log(h), np.log(e), 1)[0])


def derivative_sup_norm(f, order: int, domain, points_per_interval: int = 2048) -> float:
    """``max |f^(order)|`` over one interval or a union of intervals.

    Returns ``inf`` when ``f`` has no registered derivative of that order.
    """
    if not getattr(f, "has_derivative", lambda k: False)(order):
        return float("inf")
    deriv = f.derivative(order)
    intervals = [domain] if np.isscalar(domain[0]) else list(domain)
    best = 0.0
    for a, b in intervals:
        x = np.linspace(a, b, points_per_interval)
        best = max(best, float(np.max(np.abs(deriv(x)))))
    return best
