import json
from collections import Counter
from itertools import permutations
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st
from scipy.stats import chisquare

from mif.rand import (
    BITS_PER_DRAW_BOUND,
    SeededSource,
    derive_trial_seed,
    sample_distinct_sequence,
)

GOLDEN = Path(__file__).parent / "golden" / "trial_seeds.json"


def test_full_range_is_permutation():
    for seed in range(20):
        out = sample_distinct_sequence(5, 5, SeededSource(seed))
        assert sorted(out) == [1, 2, 3, 4, 5]


def test_forced_single_element():
    assert sample_distinct_sequence(1, 1, SeededSource(99)) == [1]


def test_too_long_rejected():
    with pytest.raises(ValueError):
        sample_distinct_sequence(3, 4, SeededSource(0))


def test_single_draw_is_uniform():
    src = SeededSource(2024)
    counts = Counter(sample_distinct_sequence(5, 1, src)[0] for _ in range(10**5))
    assert set(counts) == {1, 2, 3, 4, 5}
    assert chisquare([counts[i] for i in range(1, 6)]).pvalue > 0.01


def test_ordered_pairs_are_uniform():
    src = SeededSource(7)
    counts = Counter(tuple(sample_distinct_sequence(4, 2, src)) for _ in range(10**5))
    pairs = list(permutations(range(1, 5), 2))
    assert len(pairs) == 12 and set(counts) == set(pairs)
    assert chisquare([counts[p] for p in pairs]).pvalue > 0.01


@given(seed=st.integers(0, 2**64 - 1), m=st.integers(1, 10**7), k=st.integers(0, 60))
def test_no_repeats_and_in_range(seed, m, k):
    k = min(k, m)
    out = sample_distinct_sequence(m, k, SeededSource(seed))
    assert len(out) == k == len(set(out))
    assert all(1 <= v <= m for v in out)


@given(seed=st.integers(0, 2**64 - 1), m=st.integers(2, 10**6), k=st.integers(32, 200))
@settings(max_examples=200)
def test_bit_accounting_bound(seed, m, k):
    k = min(k, m)
    src = SeededSource(seed)
    sample_distinct_sequence(m, k, src)
    assert src.bits_consumed <= BITS_PER_DRAW_BOUND * k * (m - 1).bit_length()


def test_bits_consumed_monotone_and_reproducible():
    a, b = SeededSource(5), SeededSource(5)
    last = 0
    for m in [3, 10, 1000, 7, 1, 2**20 + 1]:
        assert a.below(m) == b.below(m)
        assert a.bits_consumed >= last
        last = a.bits_consumed
    assert a.bits_consumed == b.bits_consumed


def test_range_one_costs_no_bits():
    src = SeededSource(1)
    assert src.below(1) == 0 and src.bits_consumed == 0


def test_large_universe_uses_small_memory():
    out = sample_distinct_sequence(10**12, 50, SeededSource(3))
    assert len(set(out)) == 50


def test_derive_trial_seed_deterministic_and_distinct():
    assert derive_trial_seed(0, 0) == derive_trial_seed(0, 0)
    assert derive_trial_seed(0, 1) != derive_trial_seed(0, 2)
    seeds = {derive_trial_seed(11, i) for i in range(10**4)}
    assert len(seeds) == 10**4
    assert all(0 <= s < 2**64 for s in seeds)


def test_derive_trial_seed_golden():
    for case in json.loads(GOLDEN.read_text()):
        assert derive_trial_seed(case["master"], case["index"]) == case["seed"]
