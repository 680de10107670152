"""Elitist (1+1) and (1+lambda) EAs that record the minimized fitness per generation."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .core import BitString, RngStream, check_probability
from .errors import InfeasibleStart, InvalidConfig, MaxGenerationsExceeded
from .problems import MinimizedView, random_feasible

DEFAULT_MAX_GENERATIONS = 10**7

# mutation masks for the (1+1) EA are drawn this many generations at a time
_BLOCK = 256


class Acceptance(enum.Enum):
    ACCEPT_GREATER_OR_EQUAL = "greater_or_equal"
    STRICT_BEST_OF_LAMBDA = "strict_best_of_lambda"


@dataclass(frozen=True)
class EaConfig:
    """Offspring count, mutation rate, acceptance rule and generation budget.

    ``mutation_prob=None`` means the standard rate ``1/n`` of the problem the
    configuration is run on.
    """

    lam: int = 1
    mutation_prob: float | None = None
    acceptance: Acceptance = Acceptance.ACCEPT_GREATER_OR_EQUAL
    max_generations: int = DEFAULT_MAX_GENERATIONS

    def __post_init__(self):
        if self.lam < 1:
            raise InvalidConfig("lambda must be at least 1")
        if self.acceptance is Acceptance.ACCEPT_GREATER_OR_EQUAL and self.lam != 1:
            raise InvalidConfig("the (1+1) EA uses exactly one offspring")
        if self.max_generations < 1:
            raise InvalidConfig("max_generations must be at least 1")
        if self.mutation_prob is not None:
            check_probability(self.mutation_prob)

    @classmethod
    def one_plus_one(cls, mutation_prob=None, max_generations=DEFAULT_MAX_GENERATIONS):
        return cls(1, mutation_prob, Acceptance.ACCEPT_GREATER_OR_EQUAL, max_generations)

    @classmethod
    def one_plus_lambda(cls, lam, mutation_prob=None, max_generations=DEFAULT_MAX_GENERATIONS):
        return cls(lam, mutation_prob, Acceptance.STRICT_BEST_OF_LAMBDA, max_generations)

    def rate(self, n: int) -> float:
        return 1.0 / n if self.mutation_prob is None else self.mutation_prob


@dataclass(frozen=True)
class RunTrace:
    """Minimized fitness ``Y_t`` for ``t = 0..T`` of a single run."""

    y_values: tuple[float, ...]
    hit: bool
    generations_used: int
    evaluations: int
    run_seed: tuple[int, int] | None = None
    final: BitString | None = None

    @property
    def y0(self) -> float:
        return self.y_values[0]


def _start(problem: MinimizedView, x0, rng):
    if x0 is None:
        x0 = random_feasible(problem.problem, rng)
    x = np.array(x0, dtype=np.uint8)
    fx, ok = problem.evaluate_one(x)
    if not ok:
        raise InfeasibleStart("the initial individual violates the constraint")
    return x, fx


def _finish(problem, ys, x, generations, evaluations, rng, strict):
    trace = RunTrace(
        tuple(ys),
        ys[-1] == 0,
        generations,
        evaluations,
        rng.address if isinstance(rng, RngStream) else None,
        x,
    )
    if strict and not trace.hit:
        raise MaxGenerationsExceeded(
            f"no optimum after {generations} generations (Y = {ys[-1]})", trace
        )
    return trace


def run_one_plus_one(
    problem: MinimizedView,
    cfg: EaConfig,
    x0: BitString | None,
    rng: RngStream,
    *,
    strict: bool = True,
) -> RunTrace:
    """(1+1) EA: one mutant per generation, kept when its fitness is not worse.

    A mutant that violates the problem's constraint is discarded. The run
    stops once ``Y`` reaches zero or after ``cfg.max_generations``
    generations. ``x0=None`` starts from a uniformly random feasible point.

    Raises
    ------
    MaxGenerationsExceeded
        When the budget runs out and ``strict`` is true; the partial trace
        is attached to the exception. With ``strict=False`` the trace is
        returned with ``hit=False``.
    """
    if cfg.acceptance is not Acceptance.ACCEPT_GREATER_OR_EQUAL:
        raise InvalidConfig("run_one_plus_one needs greater-or-equal acceptance")
    n = problem.n
    p = cfg.rate(n)
    opt = problem.optimum_fitness
    evaluate = problem.evaluate_one
    x, fx = _start(problem, x0, rng)
    ys = [opt - fx]
    gen = 0
    masks = None
    row = _BLOCK
    while fx < opt and gen < cfg.max_generations:
        if row == _BLOCK:
            rows = min(_BLOCK, cfg.max_generations - gen)
            masks = (rng.random((rows, n)) < p).view(np.uint8)
            row = 0
        y = x ^ masks[row]
        row += 1
        fy, ok = evaluate(y)
        if ok and fy >= fx:
            x, fx = y, fy
        gen += 1
        ys.append(opt - fx)
    return _finish(problem, ys, x, gen, gen, rng, strict)


def run_one_plus_lambda(
    problem: MinimizedView,
    cfg: EaConfig,
    x0: BitString | None,
    rng: RngStream,
    *,
    strict: bool = True,
) -> RunTrace:
    """(1+lambda) EA with strict best-of-lambda replacement.

    Each generation draws ``lam`` mutants of the parent in index order from
    the run's stream. Infeasible mutants are replaced by the parent. The
    best mutant replaces the parent only if it is strictly better; among
    equally good mutants the first one generated wins.
    """
    if cfg.acceptance is not Acceptance.STRICT_BEST_OF_LAMBDA:
        raise InvalidConfig("run_one_plus_lambda needs strict best-of-lambda acceptance")
    n = problem.n
    lam = cfg.lam
    p = cfg.rate(n)
    opt = problem.optimum_fitness
    x, fx = _start(problem, x0, rng)
    ys = [opt - fx]
    gen = 0
    while fx < opt and gen < cfg.max_generations:
        offspring = x ^ (rng.random((lam, n)) < p).view(np.uint8)
        values, feasible = problem.evaluate_batch(offspring)
        values = np.where(feasible, values, fx)
        best = int(np.argmax(values))
        if values[best] > fx:
            x, fx = offspring[best], float(values[best])
        gen += 1
        ys.append(opt - fx)
    return _finish(problem, ys, x, gen, gen * lam, rng, strict)


def run(problem: MinimizedView, cfg: EaConfig, x0, rng, *, strict=True) -> RunTrace:
    """Dispatch to the (1+1) or (1+lambda) EA according to ``cfg.acceptance``."""
    if cfg.acceptance is Acceptance.ACCEPT_GREATER_OR_EQUAL:
        return run_one_plus_one(problem, cfg, x0, rng, strict=strict)
    return run_one_plus_lambda(problem, cfg, x0, rng, strict=strict)
