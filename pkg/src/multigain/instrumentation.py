"""Statistics read off run traces: hitting times, gains, zero-gain plateaus."""

from __future__ import annotations

import math
from typing import Iterable, Sequence

from .algorithms import EaConfig, RunTrace, run
from .core import BitString, RngStream
from .errors import EmptyInput, InputError, NoImprovementObserved, NotHit
from .problems import MinimizedView


def _ys(trace) -> Sequence[float]:
    return trace.y_values if isinstance(trace, RunTrace) else trace


def first_hitting_time(trace, epsilon: float = 0.0) -> int:
    """Smallest ``t`` with ``Y_t <= epsilon``."""
    for t, y in enumerate(_ys(trace)):
        if y <= epsilon:
            return t
    raise NotHit(f"the trace never reaches Y <= {epsilon}")


def gain_sequence(trace) -> list[float]:
    """One-generation gains ``Y_t - Y_{t+1}``."""
    ys = _ys(trace)
    return [a - b for a, b in zip(ys, ys[1:])]


def longest_zero_gain_run(trace, count_improving: bool = False) -> int:
    """Length of the longest block of consecutive zero gains before the hit.

    By default this counts only the generations without progress. With
    ``count_improving=True`` the generation that ends the plateau is counted
    too, i.e. the result is the longest wait between improvements (every
    run that moves at all then scores at least 1).
    """
    ys = list(_ys(trace))
    try:
        ys = ys[: first_hitting_time(ys) + 1]
    except NotHit:
        pass
    best = cur = 0
    for a, b in zip(ys, ys[1:]):
        if a == b:
            cur += 1
            best = max(best, cur)
        else:
            cur = 0
    if count_improving and len(ys) > 1:
        best += 1
    return best


def estimate_alpha(traces: Iterable) -> float:
    """Smallest strictly positive gain seen in any trace."""
    positive = [g for tr in traces for g in gain_sequence(tr) if g > 0]
    if not positive:
        raise NoImprovementObserved("no trace contains a positive gain")
    return min(positive)


def estimate_khat(traces: Iterable, count_improving: bool = False) -> float:
    """Mean longest zero-gain run over the given traces."""
    lengths = [longest_zero_gain_run(tr, count_improving) for tr in traces]
    if not lengths:
        raise EmptyInput("need at least one trace")
    return sum(lengths) / len(lengths)


def empirical_multiple_gain(
    problem: MinimizedView,
    cfg: EaConfig,
    x: BitString,
    k: int,
    samples: int,
    rng: RngStream,
) -> tuple[float, float]:
    """Monte-Carlo estimate of ``E[Y_t - Y_{t+k} | X_t = x]``.

    Runs the configured EA for ``k`` generations from ``x``, ``samples``
    times, drawing all samples from ``rng`` in order. Returns the sample mean
    and its standard error.
    """
    if k < 1:
        raise InputError("k must be at least 1")
    if samples < 1:
        raise InputError("samples must be at least 1")
    short = EaConfig(cfg.lam, cfg.mutation_prob, cfg.acceptance, k)
    total = total_sq = 0.0
    for _ in range(samples):
        ys = run(problem, short, x, rng, strict=False).y_values
        g = ys[0] - ys[-1]
        total += g
        total_sq += g * g
    mean = total / samples
    if samples == 1:
        return mean, 0.0
    var = max(total_sq - samples * mean * mean, 0.0) / (samples - 1)
    return mean, math.sqrt(var / samples)
