"""Seeded randomness with bit accounting."""

from __future__ import annotations

import random

MASK64 = (1 << 64) - 1
GOLDEN64 = 0x9E3779B97F4A7C15

# Rejection sampling draws ceil(log2 m) bits per attempt and succeeds with
# probability > 1/2, so over k draws the total stays below
# BITS_PER_DRAW_BOUND * k * ceil(log2 m) except with negligible probability
# once k is moderately large.
BITS_PER_DRAW_BOUND = 4


def splitmix64(x: int) -> int:
    z = (x + GOLDEN64) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def derive_trial_seed(master: int, trial_index: int) -> int:
    """Mix a master seed and a trial index into an independent 64-bit seed."""
    return splitmix64((splitmix64(master & MASK64) + trial_index * GOLDEN64) & MASK64)


class SeededSource:
    """Reproducible bit source that counts every bit it hands out."""

    def __init__(self, master_seed: int):
        self.master_seed = master_seed & MASK64
        self._rng = random.Random(self.master_seed)
        self.bits_consumed = 0

    def bits(self, k: int) -> int:
        if k == 0:
            return 0
        self.bits_consumed += k
        return self._rng.getrandbits(k)

    def below(self, m: int) -> int:
        """Uniform integer in ``{0, ..., m - 1}`` by rejection sampling."""
        if m < 1:
            raise ValueError("range must be non-empty")
        k = (m - 1).bit_length()
        while True:
            v = self.bits(k)
            if v < m:
                return v

    def uniform(self, m: int) -> int:
        """Uniform element of ``[m]`` (1-based)."""
        return self.below(m) + 1


def sample_distinct_sequence(m: int, k: int, src: SeededSource) -> list[int]:
    """Uniform sequence of ``k`` distinct elements of ``[m]``.

    Partial Fisher-Yates over a sparse swap map, so memory is O(k) even
    when ``m`` is huge.
    """
    if k > m:
        raise ValueError(f"cannot draw {k} distinct elements from [{m}]")
    if k < 0:
        raise ValueError("length must be non-negative")
    swapped: dict[int, int] = {}
    out = []
    for i in range(k):
        j = i + src.below(m - i)
        out.append(swapped.get(j, j) + 1)
        swapped[j] = swapped.get(i, i)
    return out
