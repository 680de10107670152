"""Bit strings, reproducible random streams and target-space gap statistics."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidProbability, InvalidTargetSpace

_UINT64 = 1 << 64

# Bit strings are plain uint8 numpy arrays holding 0/1 entries.
BitString = np.ndarray


def bitstring(bits: Iterable[int] | str) -> BitString:
    """Build a validated bit string from an iterable of 0/1 or a string like ``"0101"``."""
    if isinstance(bits, str):
        bits = [int(c) for c in bits.strip()]
    arr = np.asarray(list(bits) if not isinstance(bits, np.ndarray) else bits)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError("a bit string needs at least one bit")
    if not np.isin(arr, (0, 1)).all():
        raise ValueError("bit strings may only contain 0 and 1")
    return arr.astype(np.uint8)


def zeros(n: int) -> BitString:
    return np.zeros(n, dtype=np.uint8)


def ones(n: int) -> BitString:
    return np.ones(n, dtype=np.uint8)


def to_str(x: BitString) -> str:
    return "".join("1" if b else "0" for b in x)


def all_bitstrings(n: int) -> np.ndarray:
    """Every point of {0,1}^n as rows of a ``(2**n, n)`` uint8 matrix.

    Row ``k`` is the binary expansion of ``k`` with the first column as the
    most significant bit.
    """
    idx = np.arange(1 << n, dtype=np.int64)
    shifts = np.arange(n - 1, -1, -1, dtype=np.int64)
    return ((idx[:, None] >> shifts[None, :]) & 1).astype(np.uint8)


class RngStream:
    """A seeded random stream addressed by ``(master_seed, stream_id)``.

    The generator is PCG64 seeded from ``SeedSequence(master_seed,
    spawn_key=(stream_id, *path))``. Deriving the same address twice gives
    the same draws, and no state is shared between streams, so a single run
    of an experiment can be replayed on its own.

    A stream belongs to one execution context at a time.
    """

    __slots__ = ("master_seed", "stream_id", "path", "generator")

    def __init__(self, master_seed: int, stream_id: int, path: tuple[int, ...] = ()):
        for name, value in (("master_seed", master_seed), ("stream_id", stream_id)):
            if not 0 <= int(value) < _UINT64:
                raise ValueError(f"{name} must be a 64-bit natural number, got {value}")
        self.master_seed = int(master_seed)
        self.stream_id = int(stream_id)
        self.path = tuple(int(p) for p in path)
        seq = np.random.SeedSequence(self.master_seed, spawn_key=(self.stream_id, *self.path))
        self.generator = np.random.Generator(np.random.PCG64(seq))

    def __repr__(self):
        return f"RngStream(master_seed={self.master_seed}, stream_id={self.stream_id}, path={self.path})"

    @property
    def address(self) -> tuple[int, int]:
        return (self.master_seed, self.stream_id)

    def substream(self, index: int) -> RngStream:
        """Child stream that is independent of this one and of its siblings."""
        return RngStream(self.master_seed, self.stream_id, (*self.path, index))

    def random(self, size=None):
        return self.generator.random(size)

    def integers(self, low, high=None, size=None):
        return self.generator.integers(low, high, size=size)

    def bytes(self, length: int) -> bytes:
        return self.generator.bytes(length)


def derive_stream(master_seed: int, stream_id: int) -> RngStream:
    """Return the stream for ``stream_id`` under ``master_seed``."""
    return RngStream(master_seed, stream_id)


def check_probability(p: float) -> float:
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise InvalidProbability(f"probability must lie in [0, 1], got {p}")
    return p


def flip_bits(x: BitString, p: float, rng: RngStream) -> BitString:
    """Copy of ``x`` where every bit is inverted independently with probability ``p``."""
    p = check_probability(p)
    mask = rng.random(len(x)) < p
    return np.bitwise_xor(x, mask.view(np.uint8))


@dataclass(frozen=True)
class TargetSpace:
    """Sorted distinct fitness values with their smallest and largest gaps."""

    levels: tuple[float, ...]
    alpha: float
    beta: float

    @property
    def m(self) -> int:
        return len(self.levels) - 1

    def gaps(self) -> tuple[float, ...]:
        return tuple(b - a for a, b in zip(self.levels, self.levels[1:]))

    def __contains__(self, value) -> bool:
        return float(value) in self.levels


def target_space_stats(levels: Sequence[float]) -> TargetSpace:
    """Gap statistics of a strictly increasing sequence of fitness values.

    Raises
    ------
    InvalidTargetSpace
        If fewer than two levels are given or the sequence is not strictly
        increasing.
    """
    values = tuple(float(v) for v in levels)
    if len(values) < 2:
        raise InvalidTargetSpace("a target space needs at least two levels")
    gaps = [b - a for a, b in zip(values, values[1:])]
    if min(gaps) <= 0:
        raise InvalidTargetSpace("target space levels must be strictly increasing")
    return TargetSpace(values, min(gaps), max(gaps))
