"""Repeated-run campaigns over a grid of encoding lengths, with bound comparison.

For every ``n`` a campaign performs ``runs`` independent runs from a fixed
start, records the mean and maximum hitting time and the mean longest
zero-gain run ``k_hat``, and sets them against the matching closed-form
bounds. Across the grid it computes three Pearson correlations.
"""

from __future__ import annotations

import csv
import enum
import io
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import BinaryIO, Sequence

from . import bounds
from .algorithms import DEFAULT_MAX_GENERATIONS, EaConfig, run
from .core import derive_stream
from .errors import DegenerateVariance, DimensionMismatch, InputError, InstanceTooSmall, IoError
from .instrumentation import first_hitting_time, gain_sequence, longest_zero_gain_run
from .problems import (
    MinimizedView,
    OneMaxProblem,
    fixed_start,
    make_knapsack_b,
    make_maxsat_c,
)
from .svg import render_svg

CORRELATION_THRESHOLD = 0.91


class Family(enum.Enum):
    A_ONEMAX = "A"
    B_KNAPSACK = "B"
    C_MAXSAT = "C"

    @classmethod
    def parse(cls, value) -> Family:
        if isinstance(value, cls):
            return value
        for member in cls:
            if member.value == str(value).upper():
                return member
        raise InputError(f"unknown experiment family {value!r}")

    @property
    def min_n(self) -> int:
        return {"A": 1, "B": 5, "C": 2}[self.value]


@dataclass(frozen=True)
class ExperimentSpec:
    family: Family
    n_grid: tuple[int, ...]
    runs: int = 1000
    lam: int = 20
    master_seed: int = 0
    max_generations: int = DEFAULT_MAX_GENERATIONS
    count_improving: bool = False
    threshold: float = CORRELATION_THRESHOLD

    def __post_init__(self):
        object.__setattr__(self, "family", Family.parse(self.family))
        object.__setattr__(self, "n_grid", tuple(int(n) for n in self.n_grid))
        if not self.n_grid:
            raise InputError("n_grid must not be empty")
        if any(b <= a for a, b in zip(self.n_grid, self.n_grid[1:])):
            raise InputError("n_grid must be strictly increasing")
        if self.runs < 1:
            raise InputError("runs must be at least 1")
        if self.lam < 1:
            raise InputError("lambda must be at least 1")
        if self.threshold < CORRELATION_THRESHOLD:
            raise InputError(f"correlation threshold may not be below {CORRELATION_THRESHOLD}")

    @property
    def effective_lambda(self) -> int:
        return 1 if self.family is Family.A_ONEMAX else self.lam


@dataclass(frozen=True)
class ResultRow:
    n: int
    runs: int
    lam: int
    efht1: float
    t0_mean: float
    efht2: float
    t0_max: int
    k_hat: float
    k_low: float
    alpha_used: float
    y0: float


@dataclass(frozen=True)
class ExperimentReport:
    spec: ExperimentSpec
    rows: tuple[ResultRow, ...]
    r_efht1_t0: float | None
    r_efht2_tmax: float | None
    r_khat_klow: float | None
    checks: dict = field(default_factory=dict)


@dataclass(frozen=True)
class Criterion:
    name: str
    passed: bool
    detail: str


def pearson(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Pearson correlation in the raw-sum form ``(n Sxy - Sx Sy) / sqrt(...)``.

    Raises
    ------
    DimensionMismatch
        If the sequences differ in length or have fewer than two entries.
    DegenerateVariance
        If either sequence is constant.
    """
    if len(xs) != len(ys):
        raise DimensionMismatch("x and y must have the same length")
    n = len(xs)
    if n < 2:
        raise DimensionMismatch("need at least two points")
    # center first: the raw-sum form loses precision for large magnitudes
    mx = math.fsum(xs) / n
    my = math.fsum(ys) / n
    dx = [x - mx for x in xs]
    dy = [y - my for y in ys]
    sxx = n * math.fsum(d * d for d in dx) - math.fsum(dx) ** 2
    syy = n * math.fsum(d * d for d in dy) - math.fsum(dy) ** 2
    if sxx <= 0 or syy <= 0:
        raise DegenerateVariance("correlation undefined for a constant sequence")
    sxy = n * math.fsum(a * b for a, b in zip(dx, dy)) - math.fsum(dx) * math.fsum(dy)
    r = sxy / (math.sqrt(sxx) * math.sqrt(syy))
    return max(-1.0, min(1.0, r))


def stream_id(family: Family, n: int, run_index: int) -> int:
    """Stream of one run: cells ``(family, n)`` own disjoint 32-bit id ranges."""
    code = {"A": 1, "B": 2, "C": 3}[family.value]
    return (code << 48) | (n << 32) | run_index


def cell_setup(family: Family, n: int, lam: int, max_generations: int = DEFAULT_MAX_GENERATIONS):
    """Problem view, configuration and fixed start for one grid point."""
    family = Family.parse(family)
    if n < family.min_n:
        raise InstanceTooSmall(f"family {family.value} needs n >= {family.min_n}, got {n}")
    if family is Family.A_ONEMAX:
        problem = MinimizedView(OneMaxProblem(n), float(n))
        cfg = EaConfig.one_plus_one(max_generations=max_generations)
    elif family is Family.B_KNAPSACK:
        problem = MinimizedView(make_knapsack_b(n), 7.0)
        cfg = EaConfig.one_plus_lambda(lam, max_generations=max_generations)
    else:
        problem = MinimizedView(make_maxsat_c(n), float(2 * (n - 1)))
        cfg = EaConfig.one_plus_lambda(lam, 0.5, max_generations=max_generations)
    return problem, cfg, fixed_start(family.value, n)


def cell_bounds(family: Family, n: int, lam: int) -> tuple[float, float]:
    """``(EFHT1, k_low)`` for one grid point."""
    family = Family.parse(family)
    if family is Family.A_ONEMAX:
        return bounds.onemax_efht1(n), bounds.onemax_klow(n)
    if family is Family.B_KNAPSACK:
        p = bounds.KnapsackBoundParams.experiment_b(n, lam)
        return bounds.knapsack_efht1(p), bounds.knapsack_klow(p)
    p = bounds.MaxSatBoundParams.experiment_c(n, lam)
    return bounds.maxsat_efht1(p), bounds.maxsat_klow(p)


def _run_chunk(family_value, n, lam, master_seed, run_ids, max_generations, count_improving):
    family = Family.parse(family_value)
    problem, cfg, x0 = cell_setup(family, n, lam, max_generations)
    out = []
    for i in run_ids:
        rng = derive_stream(master_seed, stream_id(family, n, i))
        trace = run(problem, cfg, x0, rng)
        positive = [g for g in gain_sequence(trace) if g > 0]
        out.append(
            (
                first_hitting_time(trace),
                longest_zero_gain_run(trace, count_improving),
                min(positive) if positive else math.inf,
            )
        )
    return out


def _workers(workers: int | None) -> int:
    if workers is None:
        workers = int(os.environ.get("EFHT_THREADS", "1") or 1)
    return max(1, workers)


def run_cell(spec: ExperimentSpec, n: int, workers: int | None = None):
    """Per-run ``(T0, k_i, smallest positive gain)`` in run-index order."""
    lam = spec.effective_lambda
    args = (spec.family.value, n, lam, spec.master_seed)
    tail = (spec.max_generations, spec.count_improving)
    workers = _workers(workers)
    if workers == 1:
        return _run_chunk(*args, range(spec.runs), *tail)
    size = math.ceil(spec.runs / workers)
    chunks = [range(s, min(s + size, spec.runs)) for s in range(0, spec.runs, size)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = pool.map(_run_chunk, *zip(*[(*args, c, *tail) for c in chunks]))
        return [item for part in parts for item in part]


def _safe_pearson(xs, ys):
    try:
        return pearson(xs, ys)
    except (DegenerateVariance, DimensionMismatch):
        return None


def run_experiment(spec: ExperimentSpec, workers: int | None = None) -> ExperimentReport:
    """Run every cell of ``spec`` and assemble the report.

    ``alpha`` is fixed to 1 and ``Y_0`` to the distance of the fixed start
    (A: n, B: 7, C: n - 1). Any run that exhausts its generation budget
    aborts the campaign with ``MaxGenerationsExceeded``.
    """
    rows = []
    lam = spec.effective_lambda
    for n in spec.n_grid:
        if n < spec.family.min_n:
            raise InstanceTooSmall(f"family {spec.family.value} needs n >= {spec.family.min_n}")
    for n in spec.n_grid:
        problem, _, x0 = cell_setup(spec.family, n, lam, spec.max_generations)
        y0 = problem.y(x0)
        alpha = 1.0
        results = run_cell(spec, n, workers)
        t0 = [r[0] for r in results]
        ks = [r[1] for r in results]
        k_hat = math.fsum(ks) / len(ks)
        efht1, k_low = cell_bounds(spec.family, n, lam)
        rows.append(
            ResultRow(
                n=n,
                runs=spec.runs,
                lam=lam,
                efht1=efht1,
                t0_mean=math.fsum(t0) / len(t0),
                efht2=k_hat * y0 / alpha,
                t0_max=max(t0),
                k_hat=k_hat,
                k_low=k_low,
                alpha_used=alpha,
                y0=y0,
            )
        )
    r1 = _safe_pearson([r.efht1 for r in rows], [r.t0_mean for r in rows])
    r2 = _safe_pearson([r.efht2 for r in rows], [r.t0_max for r in rows])
    r3 = _safe_pearson([r.k_hat for r in rows], [r.k_low for r in rows])
    report = ExperimentReport(spec, tuple(rows), r1, r2, r3)
    checks = {c.name: c.passed for c in check_criteria(report)[:3]}
    checks["correlations_strong"] = all(c.passed for c in check_criteria(report)[3:])
    object.__setattr__(report, "checks", checks)
    return report


def check_criteria(report: ExperimentReport, threshold: float | None = None) -> list[Criterion]:
    """The three dominance checks and the three correlation checks, in that order."""
    if threshold is None:
        threshold = report.spec.threshold
    out = []
    dominance = (
        ("efht1_dominates", "efht1", "t0_mean"),
        ("efht2_dominates", "efht2", "t0_max"),
        ("khat_dominates", "k_hat", "k_low"),
    )
    for name, big, small in dominance:
        bad = [r for r in report.rows if not getattr(r, big) > getattr(r, small)]
        if bad:
            detail = "violated at n=" + ",".join(
                f"{r.n} ({big}={getattr(r, big):.6g}, {small}={getattr(r, small):.6g})" for r in bad
            )
        else:
            detail = f"{big} > {small} for all {len(report.rows)} rows"
        out.append(Criterion(name, not bad, detail))
    for name in ("r_efht1_t0", "r_efht2_tmax", "r_khat_klow"):
        r = getattr(report, name)
        if r is None:
            out.append(Criterion(name, False, "undefined (fewer than two rows or constant series)"))
        else:
            out.append(Criterion(name, r > threshold, f"r={r:.6f}, threshold {threshold}"))
    return out


CSV_HEADER = ("n", "runs", "lambda", "efht1", "t0_mean", "efht2", "t0_max", "k_hat", "k_low", "alpha", "y0")


def _g6(v: float) -> str:
    return f"{v:.6g}"


def write_csv(report: ExperimentReport, sink: BinaryIO) -> None:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in report.rows:
        w.writerow(
            [
                r.n,
                r.runs,
                r.lam,
                _g6(r.efht1),
                _g6(r.t0_mean),
                _g6(r.efht2),
                r.t0_max,
                _g6(r.k_hat),
                _g6(r.k_low),
                _g6(r.alpha_used),
                _g6(r.y0),
            ]
        )
    try:
        sink.write(buf.getvalue().encode("utf-8"))
    except OSError as exc:
        raise IoError(str(exc)) from exc


def summary_dict(report: ExperimentReport) -> dict:
    spec = report.spec
    criteria = check_criteria(report)
    return {
        "family": spec.family.value,
        "n_grid": list(spec.n_grid),
        "runs": spec.runs,
        "lambda": spec.effective_lambda,
        "master_seed": spec.master_seed,
        "max_generations": spec.max_generations,
        "count_improving": spec.count_improving,
        "threshold": spec.threshold,
        "r_efht1_t0": report.r_efht1_t0,
        "r_efht2_tmax": report.r_efht2_tmax,
        "r_khat_klow": report.r_khat_klow,
        "criteria": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in criteria],
        "verdict": "pass" if all(c.passed for c in criteria) else "fail",
    }


def write_summary(report: ExperimentReport, sink: BinaryIO) -> None:
    """JSON summary: spec echo, correlations, per-criterion results and verdict."""
    text = json.dumps(summary_dict(report), indent=2) + "\n"
    try:
        sink.write(text.encode("utf-8"))
    except OSError as exc:
        raise IoError(str(exc)) from exc


FIGURE_PANELS = {
    "a": ("EFHT1", "efht1", "T0 mean", "t0_mean", "average-case bound vs mean hitting time"),
    "b": ("EFHT2", "efht2", "T_max", "t0_max", "worst-case bound vs largest hitting time"),
    "c": ("k_hat", "k_hat", "k_low", "k_low", "estimated vs theoretical k_low"),
}


def write_figure(report: ExperimentReport, panel: str, sink: BinaryIO) -> None:
    name1, f1, name2, f2, caption = FIGURE_PANELS[panel]
    ns = [r.n for r in report.rows]
    series = [
        (name1, ns, [getattr(r, f1) for r in report.rows]),
        (name2, ns, [getattr(r, f2) for r in report.rows]),
    ]
    title = f"Experiment {report.spec.family.value} ({panel}): {caption}"
    render_svg(series, title, sink, x_label="encoding length n")
