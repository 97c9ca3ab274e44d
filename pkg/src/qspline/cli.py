"""Command-line entry point: ``qspline <subcommand> ...``.

Exit codes: 0 success, 2 input error, 3 numerical failure.
"""

import argparse
import ast
import json
import operator
import sys
from pathlib import Path

import numpy as np

from . import harness
from .bounds import sup_error
from .end_conditions import END_CONDITION_NAMES, build_spline, parse_end_condition
from .exceptions import InputError, SingularSystemError
from .functions import get_function
from .mesh import make_equidistant

EXIT_INPUT = 2
EXIT_NUMERIC = 3

_OPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul,
        ast.Div: operator.truediv, ast.USub: operator.neg, ast.UAdd: operator.pos}


def parse_real(text: str) -> float:
    """Parse a number, allowing ``pi`` and basic arithmetic (``5*pi/4``)."""
    def ev(node):
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
            return float(node.value)
        if isinstance(node, ast.Name) and node.id == "pi":
            return np.pi
        if isinstance(node, ast.BinOp) and type(node.op) in _OPS:
            return _OPS[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.UnaryOp) and type(node.op) in _OPS:
            return _OPS[type(node.op)](ev(node.operand))
        raise ValueError
    try:
        return float(ev(ast.parse(text.strip(), mode="eval").body))
    except (SyntaxError, ValueError, ZeroDivisionError):
        raise InputError(f"cannot parse number {text!r}") from None


def parse_pair(text: str):
    parts = text.split(",")
    if len(parts) != 2:
        raise InputError(f"expected two comma-separated values, got {text!r}")
    return tuple(parse_real(p) for p in parts)


def parse_int_list(text: str):
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise InputError(f"expected a comma-separated list of integers, got {text!r}") from None


def read_xy_csv(path):
    """Rows ``x,y``; a non-numeric first row is treated as a header."""
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    xs, ys = [], []
    for lineno, line in enumerate(lines, 1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = line.split(",")
        try:
            x, y = float(parts[0]), float(parts[1])
        except (ValueError, IndexError):
            if not xs and lineno == 1:
                continue
            raise InputError(f"{path}:{lineno}: expected 'x,y'") from None
        xs.append(x)
        ys.append(y)
    return np.array(xs), np.array(ys)


def _emit(text: str, out):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_table(args):
    spec = harness.table_spec(args.id, args.seed)
    result = harness.run_table(spec)
    _emit(result.to_csv() if args.format == "csv" else result.to_json() + "\n", args.out)


def cmd_interpolate(args):
    x, y = read_xy_csv(args.data)
    values = parse_pair(args.end_values) if args.end_values else None
    ec = parse_end_condition(args.end_condition, values)
    s = build_spline(x, y, ec)
    if args.export_coeffs:
        Path(args.export_coeffs).write_text(s.to_csv())
    if args.eval is not None:
        pts = np.array([parse_real(v) for v in args.eval])
    else:
        pts = np.linspace(x[0], x[-1], args.grid)
    vals = s(pts)
    sys.stdout.write("x,s\n" + "".join(f"{p:.17g},{v:.17g}\n" for p, v in zip(pts, np.atleast_1d(vals))))


def cmd_conditioning(args):
    _emit(harness.run_conditioning(args.figure, args.n, args.seed), args.out)


def cmd_convergence(args):
    res = harness.run_convergence(
        args.function, parse_pair(args.interval), args.end_condition, parse_int_list(args.knots)
    )
    lines = ["knots,h,error"]
    lines += [f"{k},{h:.6e},{e:.6e}" for k, h, e in zip(res.knot_counts, res.h, res.errors)]
    lines.append(f"# order {res.order:.4f}")
    sys.stdout.write("\n".join(lines) + "\n")


def cmd_bounds(args):
    fn = get_function(args.function)
    a, b = parse_pair(args.interval)
    mesh = make_equidistant(a, b, args.knots - 1)
    s = harness.build_case(fn, mesh, args.end_condition)
    rep = harness.case_bound(fn, mesh, args.end_condition)
    err = sup_error(s, fn)
    out = {
        "function": fn.name,
        "interval": [a, b],
        "knots": args.knots,
        "end_condition": args.end_condition,
        "measured_error": err,
        "bound": rep.to_dict() if rep is not None else None,
        "holds": None if rep is None else bool(err <= rep.value),
    }
    sys.stdout.write(json.dumps(out, indent=2) + "\n")


def build_parser():
    p = argparse.ArgumentParser(prog="qspline", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    ecs = list(END_CONDITION_NAMES)

    t = sub.add_parser("table", help="reproduce one of the five error tables")
    t.add_argument("--id", type=int, required=True, choices=sorted(harness.TABLES))
    t.add_argument("--seed", type=int, help="seed for the random-mesh tables (3, 4)")
    t.add_argument("--format", choices=("csv", "json"), default="csv")
    t.add_argument("--out")
    t.set_defaults(func=cmd_table)

    i = sub.add_parser("interpolate", help="build a spline from x,y CSV data")
    i.add_argument("--data", required=True)
    i.add_argument("--end-condition", required=True, choices=ecs)
    i.add_argument("--end-values", help="D0,DN for the clamped end conditions")
    g = i.add_mutually_exclusive_group()
    g.add_argument("--eval", nargs="+", help="points at which to evaluate")
    g.add_argument("--grid", type=int, default=101, help="number of equispaced evaluation points")
    i.add_argument("--export-coeffs")
    i.set_defaults(func=cmd_interpolate)

    c = sub.add_parser("conditioning", help="traces for the conditioning figures")
    c.add_argument("--figure", required=True, choices=("1", "2", "3"))
    c.add_argument("--n", type=int, default=50)
    c.add_argument("--seed", type=int)
    c.add_argument("--out", required=True)
    c.set_defaults(func=cmd_conditioning)

    v = sub.add_parser("convergence", help="fit the convergence order on equidistant meshes")
    v.add_argument("--function", required=True)
    v.add_argument("--interval", required=True, help="A,B (pi allowed, e.g. pi/4,5*pi/4)")
    v.add_argument("--end-condition", required=True, choices=ecs + ["cubic-ends"])
    v.add_argument("--knots", required=True, help="comma-separated knot counts")
    v.set_defaults(func=cmd_convergence)

    b = sub.add_parser("bounds", help="a-priori bound next to the measured error")
    b.add_argument("--function", required=True)
    b.add_argument("--interval", required=True)
    b.add_argument("--knots", type=int, required=True)
    b.add_argument("--end-condition", required=True, choices=ecs + ["cubic-ends"])
    b.set_defaults(func=cmd_bounds)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except SingularSystemError as exc:
        print(f"qspline: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (InputError, ValueError) as exc:
        print(f"qspline: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return 0


if __name__ == "__main__":
    sys.exit(main())
