"""Closed-form upper bounds on the expected first hitting time and the matching k_low.

All arithmetic is 64-bit floating point except binomial sums, which are
exact integers until the final division.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .core import TargetSpace
from .errors import (
    InputError,
    InvalidAlpha,
    InvalidBeta,
    InvalidGainBound,
    InvalidLambda,
    NumericalDomain,
)


def harmonic(n: int) -> float:
    return math.fsum(1.0 / x for x in range(1, n + 1))


def klow_ceil(k_low: float) -> int:
    """Smallest positive integer not below ``k_low``."""
    return max(1, math.ceil(k_low))


def average_case_bound(levels: TargetSpace | Sequence[float], h: Callable[[float], float], k: int = 1) -> float:
    """Average-case bound ``k * sum_{i=1..L} (r_i - r_{i-1}) / h(r_i)``.

    ``levels`` is the prefix ``r_0 < ... < r_L`` of the target space up to
    the starting level and ``h`` a non-decreasing, positive lower bound on
    the expected k-generation gain. Both properties are checked at every
    level.
    """
    if isinstance(levels, TargetSpace):
        levels = levels.levels
    r = [float(v) for v in levels]
    if k < 1:
        raise InputError("k must be a positive integer")
    if any(b <= a for a, b in zip(r, r[1:])):
        raise InputError("levels must be strictly increasing")
    hs = [float(h(v)) for v in r[1:]]
    if any(not v > 0 for v in hs):
        raise InvalidGainBound("h must be positive on every level above r_0")
    if any(b < a for a, b in zip(hs, hs[1:])):
        raise InvalidGainBound("h must be non-decreasing on the levels")
    return k * math.fsum((b - a) / hv for a, b, hv in zip(r, r[1:], hs))


# public name kept for callers that use the original operation name
theorem2_bound = average_case_bound


def worst_case_bound(k_low: float, y0: float, alpha: float) -> float:
    """Worst-case bound ``k_low * y0 / alpha`` (also serves any fixed ``k``)."""
    if not alpha > 0:
        raise InvalidAlpha(f"alpha must be positive, got {alpha}")
    if y0 < 0:
        raise InputError("y0 must be non-negative")
    if not k_low > 0:
        raise InputError("k_low must be positive")
    return k_low * y0 / alpha


def onemax_efht1(n: int) -> float:
    """``e * n * H_n`` for the (1+1) EA on OneMax."""
    if n < 1:
        raise InputError("n must be at least 1")
    return math.e * n * harmonic(n)


def onemax_klow(n: int) -> float:
    if n < 1:
        raise InputError("n must be at least 1")
    return math.e * n


@dataclass(frozen=True)
class KnapsackBoundParams:
    """Inputs of the favorably-correlated knapsack bound.

    ``q`` is the number of leading one-bits of the optimum, ``N`` the number
    of feasible solutions and ``y0`` the initial distance ``r_L - r_0``.
    """

    n: int
    lam: int
    q: int
    N: int
    d_min: float
    v_min: float
    y0: float
    beta: float = 1.0

    def __post_init__(self):
        if self.lam < 1:
            raise InvalidLambda("lambda must be at least 1")
        if not 1 <= self.q <= self.n:
            raise InputError("q must lie in 1..n")
        if self.N < 1:
            raise InputError("N must be at least 1")
        if not (self.d_min > 0 and self.v_min > 0):
            raise InputError("d_min and v_min must be positive")
        if self.y0 < 0:
            raise InputError("y0 must be non-negative")

    @classmethod
    def experiment_b(cls, n: int, lam: int = 20) -> KnapsackBoundParams:
        """Parameters of the capacity-3 instance family (``N = 4n - 4``)."""
        N = math.comb(n, 0) + math.comb(n, 1) + 3 * math.comb(n - 3, 1) + 3 + 1
        return cls(n, lam, q=3, N=N, d_min=2.0, v_min=1.0, y0=7.0, beta=2.0)

    @property
    def p_eps2(self) -> float:
        return float(Fraction(sum(math.comb(self.q, i) for i in range(self.q)), self.N))

    @property
    def p_eps1(self) -> float:
        return 1.0 - self.p_eps2

    @property
    def p_low1(self) -> float:
        return -math.expm1(-self.lam / (self.n**2 * math.e))

    @property
    def p_low2(self) -> float:
        return -math.expm1(-self.lam / (self.n * math.e))

    def gain_lower_bound(self) -> float:
        """``p(eps1) d_min p_low1 + p(eps2) v_min p_low2``."""
        den = self.p_eps1 * self.d_min * self.p_low1 + self.p_eps2 * self.v_min * self.p_low2
        if not den > 0:
            raise NumericalDomain("knapsack gain lower bound is not positive")
        return den


def knapsack_efht1(p: KnapsackBoundParams) -> float:
    return p.y0 / p.gain_lower_bound()


def knapsack_klow(p: KnapsackBoundParams) -> float:
    if not p.beta > 0:
        raise InvalidBeta(f"beta must be positive, got {p.beta}")
    return p.beta / p.gain_lower_bound()


class Regime(enum.Enum):
    VMIN_DOMINANT = "vmin_dominant"
    DMIN_DOMINANT = "dmin_dominant"


def knapsack_regime(p: KnapsackBoundParams) -> tuple[Regime, float]:
    """Which single term the knapsack bound reduces to, and the looser bound it gives.

    When ``d_min p_low1 >= v_min p_low2`` the bound is relaxed to
    ``y0 / (v_min p_low2)``, otherwise to ``y0 / (d_min p_low1)``. Ties go
    to the first case.
    """
    p.gain_lower_bound()
    a = p.d_min * p.p_low1
    b = p.v_min * p.p_low2
    if a - b >= 0:
        return Regime.VMIN_DOMINANT, p.y0 / b
    return Regime.DMIN_DOMINANT, p.y0 / a


@dataclass(frozen=True)
class MaxSatBoundParams:
    n: int
    lam: int
    n_opt: int
    s: int
    beta: float = 1.0

    def __post_init__(self):
        if self.lam < 1:
            raise InvalidLambda("lambda must be at least 1")
        if self.n_opt < 1 or self.s < 1 or self.n < 1:
            raise InputError("n, n_opt and s must be positive")

    @classmethod
    def experiment_c(cls, n: int, lam: int = 20) -> MaxSatBoundParams:
        return cls(n, lam, n_opt=2, s=2 * (n - 1), beta=1.0)

    def gain_factor(self) -> float:
        """``(1 - exp(-lam * n_opt / 2^n)) * n_opt``."""
        x = self.lam * self.n_opt / 2.0**self.n
        return -math.expm1(-x) * self.n_opt


def maxsat_efht1(p: MaxSatBoundParams) -> float:
    """``H_s / ((1 - exp(-lam n_opt / 2^n)) n_opt)`` for mutation rate 1/2."""
    return harmonic(p.s) / p.gain_factor()


def maxsat_klow(p: MaxSatBoundParams) -> float:
    if not p.beta > 0:
        raise InvalidBeta(f"beta must be positive, got {p.beta}")
    return p.beta / p.gain_factor()
