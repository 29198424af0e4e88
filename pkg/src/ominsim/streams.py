"""Deterministic randomness built on SplitMix64.

Every random draw in the package flows through a Stream so that results are
reproducible from (seed, trial index) alone, with a splitting rule simple
enough for an independent implementation to replay:

    state_0(seed, t) = splitmix64(splitmix64(seed) XOR t)

and the stream then yields splitmix64 outputs of successive states
(state += 0x9E3779B97F4A7C15 per draw).
"""
from __future__ import annotations

MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def splitmix64(x: int) -> int:
    """First output of a SplitMix64 generator seeded with x."""
    z = (x + _GOLDEN) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


class Stream:
    """A SplitMix64 sequence with unbiased integer and Bernoulli draws."""

    def __init__(self, state: int):
        self._state = state & MASK64

    def next_u64(self) -> int:
        self._state = (self._state + _GOLDEN) & MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """Uniform integer in [0, bound), rejection-sampled to avoid modulo bias."""
        if bound <= 0:
            raise ValueError(f"bound must be positive, got {bound}")
        limit = (1 << 64) - ((1 << 64) % bound)
        while True:
            u = self.next_u64()
            if u < limit:
                return u % bound

    def bernoulli(self, p: float) -> bool:
        """True with probability p (resolved at 2^-64 granularity)."""
        threshold = int(p * (1 << 64))
        return self.next_u64() < threshold


def substream(seed: int, index: int) -> Stream:
    """Independent stream for one trial, per the documented splitting rule."""
    return Stream(splitmix64(splitmix64(seed & MASK64) ^ (index & MASK64)))
