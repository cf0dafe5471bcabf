"""Sweeps over the machine parameter, input-independence scans, optimization
and the reference-constant report."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from eqclone.cloning import OPTIMAL_LAMBDA, build_isometry, check_lambda, clone, derive_params
from eqclone.errors import DomainError
from eqclone.metrics import MetricKind, all_numeric, closed_form, numeric_metric
from eqclone.states import EquatorialInput, EquatorPlane, equatorial_inputs

INV_PHI = (math.sqrt(5) - 1) / 2

DEFAULT_ANGLES = 32
SPECIAL_LAMBDAS = (0.0, OPTIMAL_LAMBDA, 1 / 3)

# where each metric is extremal in its natural direction
ANALYTIC_OPTIMA = {
    MetricKind.HS_ONE: OPTIMAL_LAMBDA,
    MetricKind.HS_TWO: OPTIMAL_LAMBDA,
    MetricKind.BURES_ONE: OPTIMAL_LAMBDA,
    MetricKind.BURES_TWO: 1 / 3,
}

SWEEP_COLUMNS = (
    "plane",
    "lambda",
    "d_a_numeric",
    "d_a_closed",
    "d_ab_numeric",
    "d_ab_closed",
    "f1_numeric",
    "f1_closed",
    "f2_numeric",
    "f2_closed",
    "angle_spread",
)


def default_lambda_grid() -> list[float]:
    """33 points on [-0.5, 0.9] plus the three special parameters, sorted."""
    grid = set(np.linspace(-0.5, 0.9, 33).tolist()) | set(SPECIAL_LAMBDAS)
    return sorted(grid)


def independence_scan(
    plane: EquatorPlane,
    lam: float,
    metric: MetricKind,
    angle_count: int = DEFAULT_ANGLES,
    isometry: np.ndarray | None = None,
) -> float:
    """Spread (max - min) of a numeric metric over a uniform angle grid."""
    if angle_count < 8:
        raise ValueError(f"angle_count must be at least 8, got {angle_count}")
    metric = MetricKind.parse(metric)
    plane = EquatorPlane.parse(plane)
    if isometry is None:
        isometry = build_isometry(plane, lam)
    values = [numeric_metric(metric, clone(inp, lam, isometry)) for inp in equatorial_inputs(plane, angle_count)]
    return float(max(values) - min(values))


@dataclass(frozen=True)
class SweepRecord:
    plane: EquatorPlane
    lam: float
    d_a_numeric: float
    d_a_closed: float
    d_ab_numeric: float
    d_ab_closed: float
    f1_numeric: float
    f1_closed: float
    f2_numeric: float
    f2_closed: float
    angle_spread: float

    def as_row(self) -> list:
        return [self.plane.value, self.lam] + [getattr(self, c) for c in SWEEP_COLUMNS[2:]]

    def as_dict(self) -> dict:
        return dict(zip(SWEEP_COLUMNS, self.as_row()))

    def max_closed_gap(self) -> float:
        return max(
            abs(getattr(self, f"{p}_numeric") - getattr(self, f"{p}_closed")) for p in ("d_a", "d_ab", "f1", "f2")
        )


def sweep_point(plane: EquatorPlane, lam: float, angle_count: int = DEFAULT_ANGLES) -> SweepRecord:
    """Evaluate every metric at one ``lam`` over the plane's angle grid.

    Numeric columns hold the mean over the grid; ``angle_spread`` is the
    largest max - min spread among the four numeric metrics.
    """
    plane = EquatorPlane.parse(plane)
    lam = check_lambda(lam)
    iso = build_isometry(plane, lam)
    outputs = [clone(inp, lam, iso) for inp in equatorial_inputs(plane, angle_count)]
    table = np.array([[m[k] for k in MetricKind] for m in map(all_numeric, outputs)])
    mean = table.mean(axis=0)
    spread = float(np.max(table.max(axis=0) - table.min(axis=0)))
    closed = [closed_form(k, lam) for k in MetricKind]
    return SweepRecord(
        plane=plane,
        lam=lam,
        d_a_numeric=float(mean[0]),
        d_a_closed=closed[0],
        d_ab_numeric=float(mean[1]),
        d_ab_closed=closed[1],
        f1_numeric=float(mean[2]),
        f1_closed=closed[2],
        f2_numeric=float(mean[3]),
        f2_closed=closed[3],
        angle_spread=spread,
    )


def sweep(plane: EquatorPlane, lambda_grid: Iterable[float], angle_count: int = DEFAULT_ANGLES) -> list[SweepRecord]:
    return [sweep_point(plane, lam, angle_count) for lam in lambda_grid]


def golden_section(f: Callable[[float], float], a: float, b: float, tol: float = 1e-10) -> float:
    """Minimizer of a unimodal ``f`` on ``[a, b]``, located to within ``tol``."""
    a, b = min(a, b), max(a, b)
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
    return (a + b) / 2


def _newton_polish(f: Callable[[float], float], x: float, lo: float, hi: float, h: float = 1e-5) -> float:
    """Refine a minimizer with finite-difference Newton steps.

    Bracketing stalls near sqrt(eps) relative accuracy on a flat extremum;
    derivative information gets past that. Steps that leave the bracket or
    raise ``f`` are rejected.
    """
    for _ in range(3):
        if not (lo < x - h and x + h < hi):
            break
        fm, f0, fp = f(x - h), f(x), f(x + h)
        curv = (fp - 2 * f0 + fm) / h**2
        if curv <= 0:
            break
        step = (fp - fm) / (2 * h) / curv
        cand = x - step
        if not (lo <= cand <= hi) or f(cand) > f0 or abs(step) > 10 * h:
            break
        x = cand
    return x


@dataclass(frozen=True)
class OptimumReport:
    metric: MetricKind
    direction: str
    lambda_star: float
    value_star: float
    bracket: tuple[float, float]
    numeric_value: float
    analytic_lambda: float | None = None

    def as_dict(self) -> dict:
        d = asdict(self)
        d["metric"] = self.metric.value
        d["bracket"] = list(self.bracket)
        return d


def optimize_scalar(
    metric: MetricKind,
    direction: str | None = None,
    bracket: Sequence[float] = (0.0, 0.9),
    tol: float = 1e-10,
) -> OptimumReport:
    """Golden-section search of the closed-form metric over ``lam``.

    The value at the optimum is spot-checked by running the full simulation
    on one generic x-z input; that number is reported as ``numeric_value``.
    """
    metric = MetricKind.parse(metric)
    direction = direction or metric.natural_direction
    if direction in ("min", "max"):
        direction += "imize"
    if direction not in ("minimize", "maximize"):
        raise ValueError(f"direction must be 'minimize' or 'maximize', got {direction!r}")
    lo, hi = (float(x) for x in bracket)
    if not (-1 < lo < hi < 1):
        raise DomainError(f"bracket ({lo}, {hi}) must be an ordered sub-interval of (-1, 1)")

    sign = 1.0 if direction == "minimize" else -1.0

    def objective(lam: float) -> float:
        return sign * closed_form(metric, lam)

    lam_star = _newton_polish(objective, golden_section(objective, lo, hi, tol), lo, hi)
    value = closed_form(metric, lam_star)
    numeric = numeric_metric(metric, clone(EquatorialInput(EquatorPlane.XZ, 0.3), lam_star))
    analytic = ANALYTIC_OPTIMA[metric] if direction == metric.natural_direction else None
    return OptimumReport(metric, direction, lam_star, value, (lo, hi), numeric, analytic)


@dataclass(frozen=True)
class ConstantRow:
    name: str
    paper_value: float
    computed_value: float
    tolerance: float

    @property
    def abs_error(self) -> float:
        return abs(self.computed_value - self.paper_value)

    @property
    def passed(self) -> bool:
        return self.abs_error < self.tolerance

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "paper_value": self.paper_value,
            "computed_value": self.computed_value,
            "abs_error": self.abs_error,
            "tolerance": self.tolerance,
            "pass": self.passed,
        }


def reproduce_constants(lambda_shift: float = 0.0, angle: float = 0.3) -> list[ConstantRow]:
    """Recompute the reference constants by full simulation.

    Distances and fidelities come from isometry -> partial trace -> numeric
    metric on the x-z input at ``angle``; the machine constants come from the
    machine vectors' inner products. ``lambda_shift`` moves every evaluation
    point away from its nominal value and exists only to exercise failures.
    """
    r2 = math.sqrt(2)
    opt = OPTIMAL_LAMBDA

    def sim(kind: MetricKind, lam: float) -> float:
        return numeric_metric(kind, clone(EquatorialInput(EquatorPlane.XZ, angle), lam + lambda_shift))

    p = derive_params(opt + lambda_shift)
    v = p.vectors()
    xi = float(np.vdot(v.Y0, v.Y0).real)
    eta = float(2 * np.vdot(v.Y0, v.Q1).real)

    hs, fid, par = 1e-10, 1e-9, 1e-12
    return [
        ConstantRow("D_a(0)", 1 / 18, sim(MetricKind.HS_ONE, 0.0), hs),
        ConstantRow("D_ab(0)", 2 / 9, sim(MetricKind.HS_TWO, 0.0), hs),
        ConstantRow("D_a(3-2*sqrt2)", (99 - 70 * r2) / (68 - 48 * r2), sim(MetricKind.HS_ONE, opt), hs),
        ConstantRow("D_ab(3-2*sqrt2)", (215 - 152 * r2) / (8 * (3 - 2 * r2) ** 2), sim(MetricKind.HS_TWO, opt), hs),
        ConstantRow("F1(0)", math.sqrt(5 / 6), sim(MetricKind.BURES_ONE, 0.0), fid),
        ConstantRow("F1(3-2*sqrt2)", math.sqrt((2 - r2) / (12 - 8 * r2)), sim(MetricKind.BURES_ONE, opt), fid),
        ConstantRow("F2(0)", math.sqrt(2 / 3), sim(MetricKind.BURES_TWO, 0.0), fid),
        ConstantRow("F2(3-2*sqrt2)", math.sqrt(1 / (24 - 16 * r2)), sim(MetricKind.BURES_TWO, opt), fid),
        ConstantRow("xi(3-2*sqrt2)", 1 / 8, xi, par),
        ConstantRow("eta(3-2*sqrt2)", (r2 - 1) / (12 - 8 * r2), eta, par),
        ConstantRow("q(3-2*sqrt2)", 1 / (4 - 2 * r2), p.q, par),
        ConstantRow("y(3-2*sqrt2)", 1 / (2 * r2), p.y, par),
    ]
