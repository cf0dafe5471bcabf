"""Command line entry point.

Exit codes: 0 success, 1 a reproduced constant is out of tolerance,
2 usage or domain error.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import json
import math
import sys
from typing import Sequence

import numpy as np

from eqclone.analysis import (
    DEFAULT_ANGLES,
    SWEEP_COLUMNS,
    optimize_scalar,
    reproduce_constants,
    sweep,
)
from eqclone.cloning import OPTIMAL_LAMBDA, clone, derive_params
from eqclone.errors import EqcloneError
from eqclone.metrics import MetricKind, all_numeric, closed_form
from eqclone.states import EquatorialInput, EquatorPlane, bloch_of_density, state_vector, to_density

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

NAMED_LAMBDAS = {"opt": OPTIMAL_LAMBDA, "1/3": 1 / 3}


def parse_lambda(text: str) -> float:
    key = text.strip().lower()
    if key in NAMED_LAMBDAS:
        return NAMED_LAMBDAS[key]
    try:
        value = float(key)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number or named point (opt, 1/3): {text!r}") from None
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"lambda must be finite, got {text!r}")
    return value


def fmt17(x: float) -> str:
    return format(float(x), ".17g")


def fmt6(x) -> str:
    if isinstance(x, bool) or not isinstance(x, (float, int, np.floating)):
        return str(x)
    return format(float(x), ".6g")


def complex_json(z) -> dict:
    z = complex(z)
    return {"re": z.real, "im": z.imag}


def matrix_json(m) -> list:
    return [[complex_json(z) for z in row] for row in np.asarray(m)]


def write_table(rows: Sequence[Sequence], header: Sequence[str], out) -> None:
    cells = [list(header)] + [[fmt6(v) for v in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    for r in cells:
        first, rest = r[0].ljust(widths[0]), [c.rjust(w) for c, w in zip(r[1:], widths[1:])]
        out.write("  ".join([first, *rest]).rstrip() + "\n")


def write_csv(rows: Sequence[Sequence], header: Sequence[str], out) -> None:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt17(v) if isinstance(v, float) else v for v in row])


def write_json(payload, out) -> None:
    json.dump(payload, out, indent=2)
    out.write("\n")


@contextlib.contextmanager
def sink(path: str | None):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            yield fh


def cmd_reproduce(args) -> int:
    rows = reproduce_constants(lambda_shift=args.perturb_lambda)
    ok = all(r.passed for r in rows)
    header = ["name", "paper_value", "computed_value", "abs_error", "tolerance", "pass"]
    with sink(args.out) as out:
        if args.format == "json":
            write_json([r.as_dict() for r in rows], out)
        else:
            body = [[r.name, r.paper_value, r.computed_value, r.abs_error, r.tolerance, r.passed] for r in rows]
            if args.format == "csv":
                write_csv(body, header, out)
            else:
                body = [row[:-1] + ["PASS" if row[-1] else "FAIL"] for row in body]
                write_table(body, header, out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_sweep(args) -> int:
    if not (-1 < args.min < args.max < 1):
        raise EqcloneError(f"need -1 < min < max < 1, got min={args.min}, max={args.max}")
    if args.steps < 2:
        raise EqcloneError(f"steps must be at least 2, got {args.steps}")
    if args.angles < 8:
        raise EqcloneError(f"angles must be at least 8, got {args.angles}")
    plane = EquatorPlane.parse(args.plane)
    grid = np.linspace(args.min, args.max, args.steps).tolist()
    records = sweep(plane, grid, args.angles)
    rows = [r.as_row() for r in records]
    with sink(args.out) as out:
        if args.format == "json":
            inputs = {"plane": plane.value, "min": args.min, "max": args.max, "steps": args.steps, "angles": args.angles}
            write_json({"inputs": inputs, "outputs": [r.as_dict() for r in records]}, out)
        elif args.format == "table":
            write_table(rows, SWEEP_COLUMNS, out)
        else:
            write_csv(rows, SWEEP_COLUMNS, out)
    return EXIT_OK


def clone_payload(plane: EquatorPlane, angle: float, lam: float) -> dict:
    inp = EquatorialInput(plane, angle)
    out = clone(inp, lam)
    params = derive_params(lam)
    metrics = {k.value: v for k, v in all_numeric(out).items()}
    return {
        "inputs": {"plane": plane.value, "angle": angle, "lambda": lam},
        "outputs": {
            "params": {"xi": params.xi, "eta": params.eta, "q": params.q, "y": params.y, "shrink": params.shrink},
            "joint": [complex_json(z) for z in out.joint.ravel()],
            "rho_ab": matrix_json(out.rho_ab),
            "rho_a": matrix_json(out.rho_a),
            "bloch_in": bloch_of_density(to_density(state_vector(inp)))._asdict(),
            "bloch_out": bloch_of_density(out.rho_a)._asdict(),
            "metrics": metrics,
            "closed_form": {k.value: closed_form(k, lam) for k in MetricKind},
        },
    }


def cmd_clone(args) -> int:
    payload = clone_payload(EquatorPlane.parse(args.plane), args.angle, args.lam)
    res = payload["outputs"]
    with sink(args.out) as out:
        if args.format == "json":
            write_json(payload, out)
            return EXIT_OK
        scalars = [[f"metric.{k}", v] for k, v in res["metrics"].items()]
        scalars += [[f"bloch_in.{k}", v] for k, v in res["bloch_in"].items()]
        scalars += [[f"bloch_out.{k}", v] for k, v in res["bloch_out"].items()]
        scalars += [[f"param.{k}", v] for k, v in res["params"].items()]
        if args.format == "csv":
            write_csv(scalars, ["quantity", "value"], out)
        else:
            write_table(scalars, ["quantity", "value"], out)
            out.write("rho_a =\n")
            for row in np.asarray([[complex(z["re"], z["im"]) for z in r] for r in res["rho_a"]]):
                out.write("  " + "  ".join(f"{z.real:+.6f}{z.imag:+.6f}j" for z in row) + "\n")
    return EXIT_OK


def cmd_optimize(args) -> int:
    metric = MetricKind.parse(args.metric)
    report = optimize_scalar(metric, args.direction, tuple(args.bracket))
    analytic_value = closed_form(metric, report.analytic_lambda) if report.analytic_lambda is not None else None
    fields = {
        "lambda_star": report.lambda_star,
        "value_star": report.value_star,
        "numeric_value": report.numeric_value,
        "analytic_lambda": report.analytic_lambda,
        "analytic_value": analytic_value,
    }
    with sink(args.out) as out:
        if args.format == "json":
            inputs = {"metric": metric.value, "direction": report.direction, "bracket": list(report.bracket)}
            write_json({"inputs": inputs, "outputs": fields}, out)
        elif args.format == "csv":
            write_csv([[metric.value, report.direction, *fields.values()]], ["metric", "direction", *fields], out)
        else:
            rows = [["metric", metric.value], ["direction", report.direction]]
            rows += [[k, "n/a" if v is None else v] for k, v in fields.items()]
            write_table(rows, ["quantity", "value"], out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eqclone", description="Cloning machines for equatorial qubits: simulation and checks."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def io_options(default_format: str) -> argparse.ArgumentParser:
        p = argparse.ArgumentParser(add_help=False)
        p.add_argument("--format", choices=("table", "csv", "json"), default=default_format)
        p.add_argument("--out", metavar="PATH", default=None, help="write to PATH instead of stdout")
        return p

    p = sub.add_parser("reproduce", parents=[io_options("table")], help="recompute the reference constants")
    p.add_argument("--perturb-lambda", type=float, default=0.0, help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser("sweep", parents=[io_options("csv")], help="tabulate all metrics over a lambda range")
    p.add_argument("--plane", choices=[e.value for e in EquatorPlane], default="xz")
    p.add_argument("--min", type=parse_lambda, default=0.0)
    p.add_argument("--max", type=parse_lambda, default=0.4)
    p.add_argument("--steps", type=int, default=41)
    p.add_argument("--angles", type=int, default=DEFAULT_ANGLES)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("clone", parents=[io_options("json")], help="inspect a single cloning run")
    p.add_argument("--plane", choices=[e.value for e in EquatorPlane], default="xz")
    p.add_argument("--angle", type=float, default=0.0)
    p.add_argument("--lambda", dest="lam", type=parse_lambda, default=OPTIMAL_LAMBDA)
    p.set_defaults(func=cmd_clone)

    p = sub.add_parser("optimize", parents=[io_options("table")], help="optimize a metric over lambda")
    p.add_argument("--metric", choices=[k.value for k in MetricKind], required=True)
    direction = p.add_mutually_exclusive_group()
    direction.add_argument("--min", dest="direction", action="store_const", const="minimize")
    direction.add_argument("--max", dest="direction", action="store_const", const="maximize")
    p.add_argument("--bracket", nargs=2, type=parse_lambda, default=[0.0, 0.9], metavar=("LO", "HI"))
    p.set_defaults(func=cmd_optimize, direction=None)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except EqcloneError as exc:
        print(f"eqclone: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
