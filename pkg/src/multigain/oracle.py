"""Exact expected hitting times on small instances.

Three chains are built here:

* OneMax under the (1+1) EA, on levels "number of zero bits". Transition
  probabilities are exact rationals obtained by summing over how many zero
  and one bits a mutation flips.
* The two-optima MAX-SAT formula under the (1+lambda) EA with mutation rate
  1/2. Every offspring is then uniform on the cube, so the next level only
  depends on the level counts of the formula.
* Knapsack under the (1+lambda) EA with rate 1/n, over all 2^n genotypes.

Elitism makes every chain triangular once states are ordered by fitness, so
expected absorption times come from a backward recursion

    E_i = (1 + sum_{j better than i} P(i -> j) E_j) / (1 - P(i -> i)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .core import BitString, all_bitstrings
from .errors import InfeasibleStart, OutOfRange
from .problems import KnapsackInstance, make_maxsat_c

ONEMAX_LIMIT = 20
MAXSAT_C_LIMIT = 25
MAXSAT_C_COUNT_LIMIT = 30
KNAPSACK_LIMIT = 8


@dataclass(frozen=True)
class LevelChain:
    """Fitness-level Markov chain with levels ordered by distance to the optimum.

    ``levels[0]`` is the absorbing optimum (``Y = 0``) and
    ``transition[i, j]`` is the probability of moving from ``levels[i]`` to
    ``levels[j]``; entries above the diagonal are zero.
    """

    levels: tuple[float, ...]
    transition: np.ndarray

    @property
    def absorbing(self) -> int:
        return 0

    def expected_absorption_times(self) -> np.ndarray:
        P = self.transition
        E = np.zeros(len(self.levels))
        for i in range(1, len(self.levels)):
            E[i] = (1.0 + P[i, :i] @ E[:i]) / (1.0 - P[i, i])
        return E


def _absorption_exact(P: list[list[Fraction]]) -> list[Fraction]:
    E = [Fraction(0)] * len(P)
    for i in range(1, len(P)):
        acc = 1 + sum((P[i][j] * E[j] for j in range(i)), Fraction(0))
        E[i] = acc / (1 - P[i][i])
    return E


def _check_onemax(n: int):
    if not 1 <= n <= ONEMAX_LIMIT:
        raise OutOfRange(f"OneMax oracle supports 1 <= n <= {ONEMAX_LIMIT}, got {n}")


def _onemax_moves(n: int, r: int):
    """Yield ``(a, b, probability)``: ``a`` of the ``r`` zero bits and ``b`` of the one bits flip."""
    p = Fraction(1, n)
    q = 1 - p
    for a in range(r + 1):
        pa = math.comb(r, a)
        for b in range(n - r + 1):
            yield a, b, pa * math.comb(n - r, b) * p ** (a + b) * q ** (n - a - b)


def onemax_exact_gain(n: int, r: int) -> float:
    """Exact one-generation expected gain of the (1+1) EA at a point with ``r`` zero bits."""
    _check_onemax(n)
    if not 1 <= r <= n:
        raise OutOfRange(f"need 1 <= r <= n, got r={r}")
    gain = sum((prob * (a - b) for a, b, prob in _onemax_moves(n, r) if a > b), Fraction(0))
    return float(gain)


def _onemax_rows(n: int) -> list[list[Fraction]]:
    P = [[Fraction(0)] * (n + 1) for _ in range(n + 1)]
    P[0][0] = Fraction(1)
    for r in range(1, n + 1):
        for a, b, prob in _onemax_moves(n, r):
            # the mutant is accepted iff it has at least as many one bits
            target = r - a + b if a >= b else r
            P[r][target] += prob
    return P


def onemax_level_chain(n: int) -> LevelChain:
    _check_onemax(n)
    P = _onemax_rows(n)
    return LevelChain(tuple(float(r) for r in range(n + 1)), np.array(P, dtype=float))


def onemax_exact_efht(n: int, start_zeros: int | None = None) -> float:
    """Expected generations of the (1+1) EA on OneMax from ``start_zeros`` zero bits (default all)."""
    _check_onemax(n)
    r = n if start_zeros is None else start_zeros
    if not 0 <= r <= n:
        raise OutOfRange("start level outside 0..n")
    return float(_absorption_exact(_onemax_rows(n))[r])


def maxsat_c_level_counts(n: int, verify: bool | None = None) -> list[tuple[int, int]]:
    """``(fitness, number of assignments)`` pairs for the two-optima formula.

    Fitness ``(n-1) + j`` is reached by ``2 * C(n-1, j)`` assignments. With
    ``verify`` (default: on for n <= 15) the closed form is checked against
    exhaustive enumeration before it is returned.
    """
    if not 2 <= n <= MAXSAT_C_COUNT_LIMIT:
        raise OutOfRange(f"need 2 <= n <= {MAXSAT_C_COUNT_LIMIT}, got {n}")
    counts = [((n - 1) + j, 2 * math.comb(n - 1, j)) for j in range(n)]
    if verify is None:
        verify = n <= 15
    if verify:
        values, _ = make_maxsat_c(n).evaluate_batch(all_bitstrings(n))
        found, freq = np.unique(values.astype(int), return_counts=True)
        brute = list(zip(found.tolist(), freq.tolist()))
        if brute != counts:
            raise AssertionError(f"closed-form level counts disagree with enumeration at n={n}")
    return counts


def _maxsat_c_rows(n: int, lam: int):
    counts = maxsat_c_level_counts(n, verify=False)
    total = 2**n
    cum = []
    acc = 0
    for _, c in counts:
        acc += c
        cum.append(Fraction(acc, total))
    m = len(counts)
    # row i <-> fitness level (m-1-i), so index 0 is the optimum
    P = [[Fraction(0)] * m for _ in range(m)]
    for v in range(m):
        i = m - 1 - v
        P[i][i] = cum[v] ** lam
        for w in range(v + 1, m):
            P[i][m - 1 - w] = cum[w] ** lam - cum[w - 1] ** lam
    return counts, P


def maxsat_c_level_chain(n: int, lam: int) -> LevelChain:
    if not 2 <= n <= MAXSAT_C_LIMIT or lam < 1:
        raise OutOfRange(f"need 2 <= n <= {MAXSAT_C_LIMIT} and lambda >= 1")
    counts, P = _maxsat_c_rows(n, lam)
    opt = counts[-1][0]
    levels = tuple(float(opt - f) for f, _ in reversed(counts))
    return LevelChain(levels, np.array(P, dtype=float))


def maxsat_c_exact_efht(n: int, lam: int, start_fitness: int | None = None) -> float:
    """Expected generations of the (1+lambda) EA, rate 1/2, on the two-optima formula.

    The default start is the worst level ``n - 1`` (e.g. ``0 1 1 ... 1``).
    """
    if not 2 <= n <= MAXSAT_C_LIMIT or lam < 1:
        raise OutOfRange(f"need 2 <= n <= {MAXSAT_C_LIMIT} and lambda >= 1")
    counts, P = _maxsat_c_rows(n, lam)
    f0 = n - 1 if start_fitness is None else start_fitness
    if not n - 1 <= f0 <= 2 * (n - 1):
        raise OutOfRange("start fitness outside the target space")
    E = _absorption_exact(P)
    return float(E[2 * (n - 1) - f0])


def _mutation_matrix(n: int, p: float) -> np.ndarray:
    X = all_bitstrings(n).astype(np.int64)
    d = (X[:, None, :] != X[None, :, :]).sum(axis=2)
    return p**d * (1.0 - p) ** (n - d)


def knapsack_transition_matrix(inst: KnapsackInstance, lam: int, mutation_prob: float | None = None):
    """Genotype-level transition matrix of the (1+lambda) EA on a small knapsack.

    Returns ``(P, values, feasible)`` indexed like :func:`all_bitstrings`.
    Rows of infeasible genotypes are left at zero.

    For a parent ``x`` let ``q(z)`` be the chance that one offspring ends up
    as ``z`` (infeasible mutants count as ``x``) and ``F(v)`` the chance that
    its value is at most ``v``. The best of ``lam`` i.i.d. offspring has value
    ``v`` with probability ``F(v)^lam - F(v-)^lam``; given that, the first
    offspring reaching ``v`` is ``z`` with probability ``q(z) / Q(v)``, where
    ``Q(v)`` is the one-offspring probability of value ``v``. Only values above
    the parent's are accepted; everything else leaves the parent in place.
    """
    n = inst.n
    if n > KNAPSACK_LIMIT:
        raise OutOfRange(f"genotype chain supports n <= {KNAPSACK_LIMIT}, got {n}")
    if lam < 1:
        raise OutOfRange("lambda must be at least 1")
    p = 1.0 / n if mutation_prob is None else mutation_prob
    values, feasible = inst.evaluate_batch(all_bitstrings(n))
    M = _mutation_matrix(n, p)
    size = 1 << n
    P = np.zeros((size, size))
    distinct = np.unique(values[feasible])
    for x in np.flatnonzero(feasible):
        q = np.where(feasible, M[x], 0.0)
        q[x] += M[x][~feasible].sum()
        fx = values[x]
        Q = np.array([q[values == v].sum() for v in distinct])
        F = np.cumsum(Q)
        moved = 0.0
        for idx in np.flatnonzero(distinct > fx):
            v = distinct[idx]
            pv = F[idx] ** lam - F[idx - 1] ** lam
            if pv <= 0.0:
                continue
            cls = np.flatnonzero(feasible & (values == v))
            P[x, cls] = pv * q[cls] / Q[idx]
            moved += P[x, cls].sum()
        P[x, x] = 1.0 - moved
    return P, values, feasible


def knapsack_exact_efht(
    inst: KnapsackInstance,
    lam: int,
    x0: BitString,
    mutation_prob: float | None = None,
) -> float:
    """Exact expected generations of the (1+lambda) EA from ``x0`` on a knapsack with n <= 8."""
    P, values, feasible = knapsack_transition_matrix(inst, lam, mutation_prob)
    n = inst.n
    x0 = np.asarray(x0, dtype=np.int64)
    if x0.shape != (n,):
        raise OutOfRange("x0 has the wrong length")
    start = int((x0 << np.arange(n - 1, -1, -1)).sum())
    if not feasible[start]:
        raise InfeasibleStart("x0 violates the capacity")
    best = values[feasible].max()
    E = np.zeros(len(values))
    order = np.flatnonzero(feasible)
    order = order[np.argsort(-values[order], kind="stable")]
    for x in order:
        if values[x] == best:
            continue
        better = feasible & (values > values[x])
        E[x] = (1.0 + P[x, better] @ E[better]) / (1.0 - P[x, x])
    return float(E[start])
