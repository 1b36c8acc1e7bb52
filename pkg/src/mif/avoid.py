"""Exact deterministic one-way protocol size for AVOID(t, a, b).

Alice holds an ``a``-subset ``A`` of ``[t]``; Bob must name a ``b``-subset
disjoint from it.  A deterministic protocol with ``m`` messages splits the
``a``-subsets into ``m`` classes, each served by one ``b``-set ``B``.  That
is a set cover: candidate ``B`` covers every ``A`` inside ``[t] - B``.
"""

from __future__ import annotations

from itertools import combinations
from math import comb

AVOID_LIMIT = 10 ** 4


def _cover_sets(t: int, a: int, b: int) -> tuple[int, list[int]]:
    """Universe size and one bitmask (over the a-subsets) per candidate b-set."""
    alices = list(combinations(range(t), a))
    masks = []
    for bob in combinations(range(t), b):
        bset = set(bob)
        m = 0
        for k, alice in enumerate(alices):
            if bset.isdisjoint(alice):
                m |= 1 << k
        masks.append(m)
    # Drop candidates dominated by another one; they never help a minimum cover.
    masks = sorted(set(masks), key=lambda m: -bin(m).count("1"))
    kept = []
    for m in masks:
        if not any(m | k == k for k in kept):
            kept.append(m)
    return len(alices), kept


def _greedy(full: int, masks: list[int]) -> int:
    left, used = full, 0
    while left:
        best = max(masks, key=lambda m: bin(m & left).count("1"))
        left &= ~best
        used += 1
    return used


def avoid_min_messages(t: int, a: int, b: int) -> int:
    """Minimum number of distinct messages of any deterministic AVOID(t, a, b) protocol."""
    if a < 0 or b < 0 or a + b > t:
        raise ValueError("need a, b >= 0 and a + b <= t")
    if comb(t, a) > AVOID_LIMIT:
        raise ValueError(f"C({t},{a}) exceeds the size guard {AVOID_LIMIT}")
    size, masks = _cover_sets(t, a, b)
    full = (1 << size) - 1
    widest = max(bin(m).count("1") for m in masks)
    best = _greedy(full, masks)

    def search(left: int, used: int):
        nonlocal best
        if not left:
            best = min(best, used)
            return
        remaining = bin(left).count("1")
        if used + -(-remaining // widest) >= best:
            return
        # branch on the uncovered element with the fewest covering candidates
        options = None
        bits = left
        while bits:
            e = bits & -bits
            bits ^= e
            opts = [m for m in masks if m & e]
            if options is None or len(opts) < len(options):
                options = opts
                if len(opts) == 1:
                    break
        options.sort(key=lambda m: -bin(m & left).count("1"))
        for m in options:
            search(left & ~m, used + 1)

    search(full, 0)
    return best
