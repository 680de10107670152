import math
from decimal import Decimal, getcontext

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from multigain.bounds import (
    KnapsackBoundParams,
    MaxSatBoundParams,
    Regime,
    harmonic,
    klow_ceil,
    knapsack_efht1,
    knapsack_klow,
    knapsack_regime,
    maxsat_efht1,
    maxsat_klow,
    onemax_efht1,
    onemax_klow,
    average_case_bound,
    theorem2_bound,
    worst_case_bound,
)
from multigain.errors import InputError, InvalidAlpha, InvalidBeta, InvalidGainBound


def test_onemax_bounds():
    assert onemax_efht1(1) == math.e
    assert onemax_efht1(10) == pytest.approx(79.617, abs=0.01)
    assert onemax_efht1(30) == pytest.approx(325.78, abs=0.01)
    assert onemax_klow(10) == pytest.approx(27.1828, abs=1e-4)
    assert onemax_klow(1) == math.e
    assert onemax_klow(30) == pytest.approx(81.5485, abs=1e-4)
    values = [onemax_efht1(n) for n in range(1, 40)]
    assert all(b > a for a, b in zip(values, values[1:]))
    assert all(onemax_klow(n) == math.e * n for n in range(1, 40))


def test_average_case_bound():
    n = 10
    assert theorem2_bound(range(n + 1), lambda r: r / (math.e * n)) == pytest.approx(onemax_efht1(n), rel=1e-12)
    assert theorem2_bound([0, 1, 2, 4, 7], lambda r: 0.5) == pytest.approx(14.0)
    assert theorem2_bound([0, 5], lambda r: 2.5, k=3) == pytest.approx(6.0)


def test_average_case_bound_matches_onemax_closed_form():
    assert theorem2_bound is average_case_bound
    for n in range(1, 101):
        value = average_case_bound(range(n + 1), lambda r, n=n: r / (math.e * n))
        assert value == pytest.approx(onemax_efht1(n), rel=1e-12)


def test_average_case_bound_rejects_bad_h():
    with pytest.raises(InvalidGainBound):
        theorem2_bound([0, 1, 2], lambda r: 0.0)
    with pytest.raises(InvalidGainBound):
        theorem2_bound([0, 1, 2], lambda r: 1.0 / r)
    with pytest.raises(InputError):
        theorem2_bound([0, 2, 1], lambda r: 1.0)


def test_worst_case_bound():
    assert worst_case_bound(27.18, 10, 1) == pytest.approx(271.8)
    assert worst_case_bound(3.3, 0, 1) == 0
    assert worst_case_bound(5, 7, 2) == 17.5
    with pytest.raises(InvalidAlpha):
        worst_case_bound(1, 1, 0)
    assert klow_ceil(27.18) == 28 and klow_ceil(0.2) == 1


def _knapsack_reference(n, lam, q, N, d_min, v_min, y0):
    getcontext().prec = 50
    e = Decimal(1).exp()
    p2 = Decimal(2**q - 1) / Decimal(N)
    p1 = 1 - p2
    low1 = 1 - (-Decimal(lam) / (Decimal(n) ** 2 * e)).exp()
    low2 = 1 - (-Decimal(lam) / (Decimal(n) * e)).exp()
    return Decimal(y0) / (p1 * Decimal(d_min) * low1 + p2 * Decimal(v_min) * low2)


def test_knapsack_efht1_experiment_b():
    p = KnapsackBoundParams.experiment_b(10, 20)
    assert (p.q, p.N, p.d_min, p.v_min, p.y0) == (3, 36, 2, 1, 7)
    assert p.p_eps2 == pytest.approx(7 / 36)
    assert p.p_low1 == pytest.approx(0.070935, abs=1e-5)
    assert p.p_low2 == pytest.approx(0.520854, abs=1e-5)
    assert knapsack_efht1(p) == pytest.approx(32.47, abs=0.05)
    assert knapsack_efht1(p) == pytest.approx(float(_knapsack_reference(10, 20, 3, 36, 2, 1, 7)), rel=1e-13)
    assert knapsack_klow(p) == pytest.approx(9.278, abs=1e-3)


def test_knapsack_limits():
    big = KnapsackBoundParams(10, 10**9, 3, 36, 2.0, 1.0, 7.0)
    assert knapsack_efht1(big) == pytest.approx(252 / 65)
    zero = KnapsackBoundParams(10, 20, 3, 36, 2.0, 1.0, 0.0)
    assert knapsack_efht1(zero) == 0


def test_knapsack_klow_beta():
    p = KnapsackBoundParams.experiment_b(10, 20)
    q = KnapsackBoundParams(10, 20, 3, 36, 2.0, 1.0, 7.0, beta=4.0)
    assert knapsack_klow(q) == pytest.approx(2 * knapsack_klow(p))
    with pytest.raises(InvalidBeta):
        knapsack_klow(KnapsackBoundParams(10, 20, 3, 36, 2.0, 1.0, 7.0, beta=0.0))


def test_knapsack_regime():
    regime, loose = knapsack_regime(KnapsackBoundParams.experiment_b(10, 20))
    assert regime is Regime.DMIN_DOMINANT
    assert loose == pytest.approx(49.34, abs=0.01)
    regime, _ = knapsack_regime(KnapsackBoundParams(1, 5, 1, 2, 1.0, 1.0, 3.0))
    assert regime is Regime.VMIN_DOMINANT


@settings(max_examples=100, deadline=None)
@given(
    st.integers(2, 60), st.integers(1, 200), st.integers(1, 2), st.integers(1, 500),
    st.floats(0.1, 10), st.floats(0.1, 10), st.floats(0, 100),
)
def test_loose_bound_dominates(n, lam, q, extra, d_min, v_min, y0):
    p = KnapsackBoundParams(n, lam, q, 2**q + extra, d_min, v_min, y0)
    _, loose = knapsack_regime(p)
    assert loose >= knapsack_efht1(p) * (1 - 1e-12)


def test_maxsat_bounds():
    p = MaxSatBoundParams.experiment_c(5, 20)
    assert (p.n_opt, p.s) == (2, 8)
    assert maxsat_efht1(p) == pytest.approx(1.905, abs=0.005)
    assert maxsat_efht1(p) == pytest.approx(harmonic(8) / (2 * (1 - math.exp(-1.25))), rel=1e-14)
    assert maxsat_klow(p) == pytest.approx(0.7008, abs=1e-4)
    # 1 / (2 (1 - exp(-40/32768))), evaluated at 50 digits
    getcontext().prec = 50
    ref = 1 / (2 * (1 - (Decimal(-40) / Decimal(32768)).exp()))
    assert maxsat_klow(MaxSatBoundParams.experiment_c(15, 20)) == pytest.approx(float(ref), rel=1e-12)
    assert maxsat_klow(MaxSatBoundParams.experiment_c(15, 20)) == pytest.approx(409.85, abs=0.01)
    assert maxsat_efht1(MaxSatBoundParams(5, 10**6, 2, 8)) == pytest.approx(harmonic(8) / 2)
    assert maxsat_efht1(MaxSatBoundParams(3, 1, 8, 1)) == pytest.approx(1 / ((1 - math.exp(-1)) * 8))
    assert maxsat_klow(MaxSatBoundParams(5, 20, 2, 8, beta=3.0)) == pytest.approx(3 * maxsat_klow(p))
