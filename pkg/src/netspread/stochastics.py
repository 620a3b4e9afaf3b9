"""Seedable randomness for simulations.

All simulation code draws nothing but uniforms in [0, 1) from a source
object, so a scripted source can stand in for the real generator in unit
tests. The real source is counter-based (Philox keyed by seed and stream
id), which makes replications independent without any coordination:
replication r simply uses stream_id = r.
"""

import math

import numpy as np

from .errors import (
    NonPositiveRate,
    ProbabilityOutOfRange,
    ScriptExhausted,
    ZeroRange,
)

_MASK64 = 0xFFFFFFFFFFFFFFFF


class RandomSource:
    """Deterministic uniform source; bit-identical for fixed (seed, stream_id)."""

    __slots__ = ("seed", "stream_id", "_gen", "_buf", "_pos", "_chunk")

    def __init__(self, seed, stream_id=0, chunk=1024):
        self.seed = seed
        self.stream_id = stream_id
        key = np.array([seed & _MASK64, stream_id & _MASK64], dtype=np.uint64)
        self._gen = np.random.Generator(np.random.Philox(key=key))
        self._buf = []
        self._pos = 0
        self._chunk = chunk

    def spawn(self, stream_id):
        """Independent stream with the same seed."""
        return RandomSource(self.seed, stream_id, chunk=self._chunk)

    def uniform(self):
        pos = self._pos
        try:
            u = self._buf[pos]
        except IndexError:
            self._buf = self._gen.random(self._chunk).tolist()
            pos = 0
            u = self._buf[0]
        self._pos = pos + 1
        return u


class ScriptedSource:
    """Replays a fixed list of uniforms; used to drive algorithms through
    hand-computed scenarios in tests."""

    __slots__ = ("_values", "_pos")

    def __init__(self, values):
        for v in values:
            if not (0.0 <= v < 1.0):
                raise ProbabilityOutOfRange(f"scripted value {v} outside [0, 1)")
        self._values = list(values)
        self._pos = 0

    def uniform(self):
        if self._pos >= len(self._values):
            raise ScriptExhausted("scripted random source ran out of values")
        u = self._values[self._pos]
        self._pos += 1
        return u

    @property
    def remaining(self):
        return len(self._values) - self._pos


def scripted_source(values):
    return ScriptedSource(values)


def draw_exp(rng, rate):
    """Exponential waiting time with mean 1/rate (inverse CDF)."""
    if not (rate > 0.0) or not math.isfinite(rate):
        raise NonPositiveRate(f"exponential rate must be positive and finite, got {rate}")
    return -math.log1p(-rng.uniform()) / rate


def draw_uniform_index(rng, n):
    """Uniform integer in [0, n)."""
    if n < 1:
        raise ZeroRange(f"cannot draw an index from a range of size {n}")
    i = int(rng.uniform() * n)
    return n - 1 if i >= n else i


def draw_bernoulli(rng, p):
    if not (0.0 <= p <= 1.0):
        raise ProbabilityOutOfRange(f"probability {p} outside [0, 1]")
    return rng.uniform() < p
