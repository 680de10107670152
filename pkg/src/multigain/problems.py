"""OneMax, knapsack and MAX-SAT instances with batch evaluation.

Every problem exposes ``evaluate_batch(X) -> (fitness, feasible)`` over a
``(rows, n)`` matrix of bit strings, which is what the algorithms call.
Fitness is maximised; :class:`MinimizedView` turns it into the distance to
the optimum used by the runtime analysis.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .core import BitString, TargetSpace, all_bitstrings, target_space_stats
from .errors import (
    DimensionMismatch,
    EnumerationTooLarge,
    InputError,
    InstanceTooSmall,
    OptimumUnknown,
)

ENUMERATION_LIMIT = 20


def _check_length(x, n):
    if x.shape[-1] != n:
        raise DimensionMismatch(f"expected {n} bits, got {x.shape[-1]}")


@dataclass(frozen=True)
class OneMaxProblem:
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise InputError("OneMax needs n >= 1")

    @property
    def known_optimum(self) -> float:
        return float(self.n)

    def evaluate_batch(self, X):
        X = np.atleast_2d(X)
        _check_length(X, self.n)
        values = X.sum(axis=1, dtype=np.int64).astype(float)
        return values, np.ones(len(X), dtype=bool)

    def evaluate_one(self, x):
        return float(x.sum()), True


@dataclass(frozen=True)
class KnapsackInstance:
    """0/1 knapsack with positive values, positive weights and a capacity."""

    values: tuple[float, ...]
    weights: tuple[float, ...]
    capacity: float
    known_optimum: float | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        object.__setattr__(self, "weights", tuple(float(w) for w in self.weights))
        if len(self.values) != len(self.weights):
            raise DimensionMismatch("values and weights differ in length")
        if not self.values:
            raise InputError("a knapsack instance needs at least one item")
        if min(self.values) <= 0 or min(self.weights) <= 0 or self.capacity <= 0:
            raise InputError("values, weights and capacity must be positive")
        object.__setattr__(self, "_v", np.array(self.values))
        object.__setattr__(self, "_w", np.array(self.weights))

    @property
    def n(self) -> int:
        return len(self.values)

    def evaluate_batch(self, X):
        X = np.atleast_2d(X)
        _check_length(X, self.n)
        value = X @ self._v
        weight = X @ self._w
        return value, weight <= self.capacity

    def evaluate_one(self, x):
        weight = float(x @ self._w)
        return float(x @ self._v), weight <= self.capacity


@dataclass(frozen=True)
class CnfFormula:
    """CNF formula; literals use the DIMACS signed-integer convention."""

    num_vars: int
    clauses: tuple[tuple[int, ...], ...]
    known_optimum: float | None = field(default=None, compare=False)

    def __post_init__(self):
        clauses = tuple(tuple(int(l) for l in c) for c in self.clauses)
        object.__setattr__(self, "clauses", clauses)
        if self.num_vars < 1:
            raise InputError("a formula needs at least one variable")
        pos = np.zeros((len(clauses), self.num_vars))
        neg = np.zeros((len(clauses), self.num_vars))
        for i, clause in enumerate(clauses):
            if not clause:
                raise InputError(f"clause {i} is empty")
            for lit in clause:
                var = abs(lit)
                if lit == 0 or var > self.num_vars:
                    raise InputError(f"literal {lit} outside 1..{self.num_vars}")
                if lit > 0:
                    pos[i, var - 1] = 1
                else:
                    neg[i, var - 1] = 1
        object.__setattr__(self, "_pos", pos.T.copy())
        object.__setattr__(self, "_neg", neg.T.copy())
        object.__setattr__(self, "_neg_count", neg.sum(axis=1))

    @property
    def n(self) -> int:
        return self.num_vars

    @property
    def s(self) -> int:
        return len(self.clauses)

    def literals(self, i: int) -> list[tuple[int, bool]]:
        """Clause ``i`` as ``(variable, negated)`` pairs."""
        return [(abs(l), l < 0) for l in self.clauses[i]]

    def evaluate_batch(self, X):
        X = np.atleast_2d(X)
        _check_length(X, self.num_vars)
        Xf = X.astype(float)
        # true positive literals plus negated literals whose variable is false
        hits = Xf @ self._pos + (self._neg_count - Xf @ self._neg)
        return (hits > 0.5).sum(axis=1).astype(float), np.ones(len(X), dtype=bool)

    def evaluate_one(self, x):
        values, _ = self.evaluate_batch(x[None, :])
        return float(values[0]), True


Problem = Union[OneMaxProblem, KnapsackInstance, CnfFormula]


def onemax_evaluate(p: OneMaxProblem, x: BitString) -> int:
    _check_length(np.asarray(x), p.n)
    return int(np.asarray(x).sum())


def knapsack_evaluate(inst: KnapsackInstance, x: BitString) -> tuple[float, float, bool]:
    """``(value, weight, feasible)``; infeasible assignments are evaluated, not rejected."""
    x = np.asarray(x)
    _check_length(x, inst.n)
    weight = float(x @ inst._w)
    return float(x @ inst._v), weight, weight <= inst.capacity


def maxsat_evaluate(f: CnfFormula, x: BitString) -> int:
    """Number of satisfied clauses, reading ``x[i] == 1`` as variable ``i+1`` true."""
    x = np.asarray(x)
    _check_length(x, f.num_vars)
    return int(f.evaluate_one(x)[0])


def make_knapsack_b(n: int) -> KnapsackInstance:
    """Favorably correlated instance with capacity 3.

    Items 1-3 have values 3, 3, 1 and weight 1; every later item has value 1
    and weight 2. The optimum takes the first three items for a value of 7.
    """
    if n < 5:
        raise InstanceTooSmall(f"this knapsack family needs n >= 5, got {n}")
    values = (3, 3, 1) + (1,) * (n - 3)
    weights = (1, 1, 1) + (2,) * (n - 3)
    return KnapsackInstance(values, weights, 3, known_optimum=7.0)


def make_maxsat_c(n: int) -> CnfFormula:
    """2-CNF ``(x1 | ~xi)`` and ``(~x1 | xi)`` for i = 2..n.

    A clause pair is fully satisfied exactly when ``xi == x1``, so the two
    optima are all-zeros and all-ones with ``2(n-1)`` satisfied clauses.
    """
    if n < 2:
        raise InstanceTooSmall(f"this formula family needs n >= 2, got {n}")
    clauses = [(1, -i) for i in range(2, n + 1)] + [(-1, i) for i in range(2, n + 1)]
    return CnfFormula(n, tuple(clauses), known_optimum=float(2 * (n - 1)))


def validate_favorably_correlated(inst: KnapsackInstance) -> bool:
    """True when values never increase and weights never decrease along the item order."""
    v, w = inst.values, inst.weights
    return all(v[i] >= v[i + 1] and w[i] <= w[i + 1] for i in range(len(v) - 1))


def _enumerate(problem: Problem, limit: int):
    if problem.n > limit:
        raise EnumerationTooLarge(f"n={problem.n} exceeds the enumeration limit {limit}")
    X = all_bitstrings(problem.n)
    values, feasible = problem.evaluate_batch(X)
    return X, values, feasible


def enumerate_target_space(problem: Problem, limit: int = ENUMERATION_LIMIT) -> TargetSpace:
    """Distinct fitness values over all feasible assignments."""
    _, values, feasible = _enumerate(problem, limit)
    return target_space_stats(np.unique(values[feasible]))


def count_feasible(problem: Problem, limit: int = ENUMERATION_LIMIT) -> int:
    _, _, feasible = _enumerate(problem, limit)
    return int(feasible.sum())


def optimal_assignments(problem: Problem, limit: int = ENUMERATION_LIMIT) -> np.ndarray:
    """All feasible assignments that reach the best fitness, as rows."""
    X, values, feasible = _enumerate(problem, limit)
    best = values[feasible].max()
    return X[feasible & (values == best)]


def optimum_fitness(problem: Problem, limit: int = ENUMERATION_LIMIT) -> float:
    """Known optimum if the instance carries one, otherwise brute force for small n."""
    known = problem.known_optimum
    if known is not None:
        return float(known)
    if problem.n > limit:
        raise OptimumUnknown(
            f"optimum of an n={problem.n} instance is unknown; supply it explicitly"
        )
    _, values, feasible = _enumerate(problem, limit)
    return float(values[feasible].max())


@dataclass(frozen=True)
class MinimizedView:
    """Distance-to-optimum view ``Y(x) = optimum_fitness - f(x)`` of a problem."""

    problem: Problem
    optimum_fitness: float

    @classmethod
    def of(cls, problem: Problem, optimum: float | None = None) -> MinimizedView:
        if optimum is None:
            optimum = optimum_fitness(problem)
        return cls(problem, float(optimum))

    @property
    def n(self) -> int:
        return self.problem.n

    def fitness(self, x) -> float:
        return self.problem.evaluate_one(np.asarray(x))[0]

    def feasible(self, x) -> bool:
        return bool(self.problem.evaluate_one(np.asarray(x))[1])

    def y(self, x) -> float:
        return self.optimum_fitness - self.fitness(x)

    def evaluate_batch(self, X):
        return self.problem.evaluate_batch(X)

    def evaluate_one(self, x):
        return self.problem.evaluate_one(x)


def fixed_start(family: str, n: int) -> BitString:
    """Initial individual used by the experiments: all zeros, or 0 then ones for MAX-SAT."""
    x = np.zeros(n, dtype=np.uint8)
    if family.upper() in ("C", "MAXSAT"):
        x[1:] = 1
    return x


def random_feasible(problem: Problem, rng, max_tries: int = 100_000) -> BitString:
    """Uniform draw from {0,1}^n conditioned on feasibility (rejection sampling)."""
    for _ in range(max_tries):
        x = (rng.random(problem.n) < 0.5).astype(np.uint8)
        if problem.evaluate_one(x)[1]:
            return x
    raise InputError("could not draw a feasible starting point")


def knapsack_stats(inst: KnapsackInstance) -> dict:
    """``d_min`` (smallest nonzero value difference) and ``v_min`` of an instance."""
    distinct = sorted(set(inst.values))
    diffs = [b - a for a, b in zip(distinct, distinct[1:])]
    return {
        "d_min": min(diffs) if diffs else None,
        "v_min": min(inst.values),
    }

