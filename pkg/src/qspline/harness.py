"""Error tables, convergence studies and conditioning datasets."""

import json
from dataclasses import dataclass, field

import numpy as np

from . import bounds as B
from .conditioning import SEEDS, SQRT3, exact_eigenform, propagate, unit_mesh
from .end_conditions import (
    ClampedFirst,
    ClampedSecond,
    Natural,
    NotAKnot,
    QSpline,
    RNAK,
    build_r_approximate,
    build_spline,
    cubic_end_values,
    end_condition_label,
)
from .exceptions import InputError
from .functions import TestFunction, get_function
from .mesh import Mesh, make_equidistant, make_random_uniform
from .spline import build_basis_triple

KNOT_COUNTS = (6, 12, 24, 48, 96)
TABLE_END_CONDITIONS = ("natural", "nak", "q", "rnak")
DEFAULT_SEED = 20240501
DEFAULT_SAMPLES = 256

_BY_NAME = {
    "natural": Natural(),
    "nak": NotAKnot(),
    "q": QSpline(),
    "rnak": RNAK(True),
    "rnak-unsafe": RNAK(False),
}


@dataclass(frozen=True)
class ExperimentSpec:
    function: str
    interval: tuple
    knot_counts: tuple = KNOT_COUNTS
    mesh_kind: str = "equidistant"
    seed: int | None = None
    end_conditions: tuple = TABLE_END_CONDITIONS
    samples_per_interval: int = DEFAULT_SAMPLES

    def validate(self):
        fn = get_function(self.function)
        a, b = self.interval
        if not a < b:
            raise InputError(f"bad interval {self.interval}")
        if any(k < 6 for k in self.knot_counts):
            raise InputError("knot counts must be at least 6")
        if self.mesh_kind not in ("equidistant", "random"):
            raise InputError(f"unknown mesh kind {self.mesh_kind!r}")
        if self.mesh_kind == "random" and self.seed is None:
            raise InputError("random meshes need a seed")
        for ec in self.end_conditions:
            if ec != "cubic-ends":
                end_condition_from_name(ec, fn, self.interval)
        return self

    def mesh(self, knots: int) -> Mesh:
        a, b = self.interval
        if self.mesh_kind == "equidistant":
            return make_equidistant(a, b, knots - 1)
        # one stream per knot count so cells do not depend on each other
        return make_random_uniform(a, b, knots - 1, seed=(self.seed * 1000003 + knots))


@dataclass
class ExperimentResult:
    spec: ExperimentSpec
    errors: dict
    meshes: dict
    bounds: dict = field(default_factory=dict)

    def error(self, ec: str, knots: int) -> float:
        return self.errors[ec][knots]

    def row(self, ec: str) -> list:
        return [self.errors[ec][k] for k in self.spec.knot_counts]

    def to_csv(self) -> str:
        lines = ["end_condition," + ",".join(str(k) for k in self.spec.knot_counts)]
        for ec in self.spec.end_conditions:
            lines.append(ec + "," + ",".join(f"{e:.6e}" for e in self.row(ec)))
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {
            "function": self.spec.function,
            "interval": list(self.spec.interval),
            "mesh_kind": self.spec.mesh_kind,
            "seed": self.spec.seed,
            "knot_counts": list(self.spec.knot_counts),
            "errors": {ec: self.row(ec) for ec in self.spec.end_conditions},
            "meshes": {str(k): v for k, v in self.meshes.items()},
            "bounds": {
                ec: {str(k): rep.to_dict() for k, rep in cells.items()}
                for ec, cells in self.bounds.items()
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


TABLES = {
    1: ExperimentSpec("sin", (0.0, np.pi)),
    2: ExperimentSpec("sin", (np.pi / 4, 5 * np.pi / 4)),
    3: ExperimentSpec("sin", (np.pi / 4, 5 * np.pi / 4), mesh_kind="random", seed=DEFAULT_SEED),
    4: ExperimentSpec("runge", (-1.0, 3.0), mesh_kind="random", seed=DEFAULT_SEED),
    5: ExperimentSpec("logistic", (-1.0, 4.0)),
}


def table_spec(table_id: int, seed: int | None = None) -> ExperimentSpec:
    try:
        spec = TABLES[int(table_id)]
    except (KeyError, ValueError):
        raise InputError(f"table id must be one of {sorted(TABLES)}") from None
    if seed is not None and spec.mesh_kind == "random":
        spec = ExperimentSpec(**{**spec.__dict__, "seed": int(seed)})
    return spec


def end_condition_from_name(name, fn: TestFunction | None = None, interval=None):
    """End condition by name; clamped variants take exact derivatives of ``fn``."""
    if name in _BY_NAME:
        return _BY_NAME[name]
    if name in ("clamped-first", "clamped-second"):
        if fn is None or interval is None:
            raise InputError(f"{name} needs a registered function to supply end derivatives")
        k = 1 if name == "clamped-first" else 2
        d = fn.derivative(k)
        a, b = interval
        v0, vn = float(d(a)), float(d(b))
        return ClampedFirst(v0, vn) if k == 1 else ClampedSecond(v0, vn)
    raise InputError(f"unknown end condition {name!r}")


def case_bound(fn: TestFunction, mesh: Mesh, ec_name: str):
    """The a-priori bound that applies to this (function, mesh, end condition), if any."""
    h = mesh.stats().h_max
    a, b = mesh.a, mesh.b
    M4 = B.derivative_sup_norm(fn, 4, (a, b))
    if ec_name in ("clamped-first", "clamped-second"):
        return B.bound_clamped(h, M4)
    if ec_name == "q":
        x = mesh.knots
        M5 = B.derivative_sup_norm(fn, 5, [(x[0], x[4]), (x[-5], x[-1])])
        return B.bound_q_spline(h, M4, M5)
    if ec_name == "cubic-ends":
        return B.bound_r_approximate(h, M4, B.CUBIC_ESTIMATE_R)
    if ec_name == "natural" and M4 > 0:
        # natural spline is R-approximate with R from the end curvature it ignores
        f2 = fn.derivative(2)
        R = max(abs(float(f2(a))), abs(float(f2(b)))) / (M4 * h**2)
        return B.bound_r_approximate(h, M4, R)
    return None


def build_case(fn: TestFunction, mesh: Mesh, ec_name: str, triple=None):
    ys = fn(mesh.knots)
    if ec_name == "cubic-ends":
        return build_r_approximate(mesh, ys, *cubic_end_values(mesh, ys), triple)
    ec = end_condition_from_name(ec_name, fn, (mesh.a, mesh.b))
    return build_spline(mesh, ys, ec, triple)


def run_table(spec: ExperimentSpec, with_bounds: bool = True) -> ExperimentResult:
    """Measure sup-errors for every (end condition, knot count) cell.

    All end conditions in a column share one mesh and one basis triple.
    """
    spec.validate()
    fn = get_function(spec.function)
    errors = {ec: {} for ec in spec.end_conditions}
    bounds = {}
    meshes = {}
    for k in spec.knot_counts:
        mesh = spec.mesh(k)
        meshes[k] = {"fingerprint": mesh.fingerprint(), "seed": spec.seed}
        needs_triple = any(ec != "clamped-first" for ec in spec.end_conditions)
        triple = build_basis_triple(mesh, fn(mesh.knots)) if needs_triple else None
        for ec in spec.end_conditions:
            try:
                s = build_case(fn, mesh, ec, triple)
            except Exception as exc:
                raise type(exc)(f"cell ({ec}, {k} knots): {exc}") from exc
            errors[ec][k] = B.sup_error(s, fn, spec.samples_per_interval)
            if with_bounds:
                rep = case_bound(fn, mesh, ec)
                if rep is not None:
                    bounds.setdefault(ec, {})[k] = rep
    return ExperimentResult(spec, errors, meshes, bounds)


@dataclass(frozen=True)
class ConvergenceResult:
    knot_counts: tuple
    h: tuple
    errors: tuple
    order: float


def run_convergence(function, interval, end_condition, knot_counts, samples_per_interval=DEFAULT_SAMPLES):
    """Errors on equidistant meshes and the fitted order ``error ~ h**order``."""
    if len(knot_counts) < 3:
        raise InputError("need at least three knot counts")
    fn = get_function(function) if isinstance(function, str) else function
    a, b = interval
    hs, errs = [], []
    for k in knot_counts:
        mesh = make_equidistant(a, b, k - 1)
        s = build_case(fn, mesh, end_condition)
        hs.append(mesh.stats().h_max)
        errs.append(B.sup_error(s, fn, samples_per_interval))
    return ConvergenceResult(tuple(knot_counts), tuple(hs), tuple(errs), B.convergence_order(errs, hs))


FIGURE2_EPS = float(np.finfo(float).eps)
FIGURE1_S2_SCALE = 4e28


def run_conditioning(kind, n: int = 50, seed: int | None = None) -> str:
    """CSV traces for the three conditioning figures.

    fig1: exact eigenform of s1 (log of |b|+1) and s2 (log of 4e28 |b| + 1);
    fig2: s2 propagated forward in floating point (log of |b| + eps);
    fig3: random mesh, s1 forward from the left and s2 backward from the right.
    """
    kind = str(kind).lower().removeprefix("fig")
    if n < 2:
        raise InputError("need n >= 2")
    series = []
    if kind == "1":
        series.append((exact_eigenform(n, "s1"), 1.0, 1.0))
        series.append((exact_eigenform(n, "s2"), 1.0, FIGURE1_S2_SCALE))
    elif kind == "2":
        series.append((propagate(unit_mesh(n), *SEEDS["s2"], "forward", "s2"), FIGURE2_EPS, 1.0))
    elif kind == "3":
        mesh = make_random_uniform(0.0, float(n), n, DEFAULT_SEED if seed is None else seed)
        series.append((propagate(mesh, 1.0, SQRT3, "forward", "s1"), 1.0, 1.0))
        series.append((propagate(mesh, 1.0, SQRT3, "backward", "s2"), 1.0, 1.0))
    else:
        raise InputError(f"figure must be 1, 2 or 3, got {kind!r}")
    lines = ["series,direction,arithmetic,i,x_i,b_i,c_i,d_i,log_abs_b"]
    for trace, offset, scale in series:
        body = trace.to_csv(offset, scale, header=False).splitlines()
        prefix = f"{trace.label},{trace.direction},{trace.arithmetic},"
        lines.extend(prefix + row for row in body)
    return "\n".join(lines) + "\n"
