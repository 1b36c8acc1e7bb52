from collections import Counter
from functools import partial

import pytest
from scipy.stats import chisquare, kstest

from mif.adversaries import (
    CoverAdversary,
    EchoAdversary,
    StaticAdversary,
    UniformAdversary,
    cover_adversary,
    enumerate_outputs,
    parse_adversary,
    reachable_outputs,
    static_adversary,
)
from mif.algorithms import Classical, Pigeonhole, Trivial
from mif.core import Instance
from mif.harness import exhaustive_verify, play


def test_static_plays_stream_in_order():
    adv = StaticAdversary(Instance(4, 3), stream=[1, 2, 3])
    # the harness shows o_0 before asking for e_1
    assert adv.next([]) == 1
    assert adv.next([9]) == 1
    assert adv.next([9, 9]) == 2
    assert adv.next([9, 9, 9]) == 3


def test_static_exhausted():
    with pytest.raises(IndexError):
        StaticAdversary(Instance(4, 3), stream=[]).next([1])
    with pytest.raises(IndexError):
        StaticAdversary(Instance(4, 3), stream=[2]).next([1, 1])


def test_static_validates_stream():
    with pytest.raises(ValueError):
        StaticAdversary(Instance(4, 2), stream=[1, 2, 3])
    with pytest.raises(ValueError):
        StaticAdversary(Instance(4, 2), stream=[5])


def test_echo():
    adv = EchoAdversary()
    assert adv.next([7]) == 7
    assert adv.next([3, 9]) == 9
    with pytest.raises(ValueError):
        adv.next([])


def test_uniform_single_element():
    adv = UniformAdversary(Instance(2, 1), seed=5)
    assert {adv.next([1]) for _ in range(100)} == {1, 2}


def _uniform_pvalue(n, seed, draws):
    adv = UniformAdversary(Instance(n, 1), seed=seed)
    counts = Counter(adv.next([]) for _ in range(draws))
    assert set(counts) == set(range(1, n + 1))
    return chisquare([counts[i] for i in range(1, n + 1)]).pvalue


def test_uniform_frequencies():
    # a single fixed seed at alpha = 0.01 fails one seed in a hundred by design
    assert _uniform_pvalue(10, 123, 10**5) > 1e-3


def test_uniform_pvalues_across_seeds_are_uniform():
    pvalues = [_uniform_pvalue(10, seed, 5000) for seed in range(100)]
    assert kstest(pvalues, "uniform").pvalue > 1e-3


def test_uniform_reproducible():
    a = UniformAdversary(Instance(1000, 1), seed=9)
    b = UniformAdversary(Instance(1000, 1), seed=9)
    assert [a.next([]) for _ in range(50)] == [b.next([]) for _ in range(50)]


def test_parse_adversary():
    inst = Instance(6, 3)
    assert isinstance(parse_adversary("echo")(inst, 0), EchoAdversary)
    assert isinstance(parse_adversary("uniform")(inst, 0), UniformAdversary)
    adv = parse_adversary("static:3,1,2")(inst, 0)
    assert adv.stream == [3, 1, 2]
    with pytest.raises(ValueError):
        parse_adversary("bogus")


@pytest.mark.parametrize("factory, n, r", [
    (Trivial, 4, 2),
    (Trivial, 5, 3),
    (Pigeonhole, 6, 3),
    (partial(Classical, t=2), 6, 3),
    (partial(Classical, t=1), 5, 4),
])
def test_reachable_outputs_agree_with_enumeration(factory, n, r):
    inst = Instance(n, r, 0.2)
    alg = factory(inst, 11)
    memo = {}
    for k in range(r + 1):
        assert reachable_outputs(alg, k, memo) == enumerate_outputs(alg, k)
    # also from a non-initial state
    alg.update(1)
    for k in range(r):
        assert reachable_outputs(alg, k, {}) == enumerate_outputs(alg, k)


def test_cover_vs_trivial_cannot_win():
    inst = Instance(4, 2)
    root = Trivial(inst)
    assert reachable_outputs(root, 2) == {1, 2, 3}
    adv = CoverAdversary(inst, algorithm_factory=Trivial)
    tr = play(Trivial(inst), adv, inst)
    assert not tr.failed
    assert exhaustive_verify(Trivial, 4, 2).passed


def test_cover_defeats_fixed_seed_classical():
    inst = Instance(6, 3, 0.2)
    factory = partial(Classical, t=2)
    for seed in range(20):
        alg = factory(inst, seed)
        assert len(reachable_outputs(alg, 3)) == 3
        tr = play(alg, CoverAdversary(inst, algorithm_factory=factory, algorithm_seed=seed), inst)
        assert tr.final_failed
        assert set(tr.inputs) == set(alg.L)


def test_cover_vs_pigeonhole_no_failure():
    inst = Instance(6, 3)
    tr = play(Pigeonhole(inst), cover_adversary(Pigeonhole)(inst, 0), inst)
    assert not tr.failed
    assert exhaustive_verify(Pigeonhole, 6, 3).passed


def test_cover_size_guard():
    with pytest.raises(ValueError):
        CoverAdversary(Instance(7, 3), algorithm_factory=Trivial)
    with pytest.raises(ValueError):
        CoverAdversary(Instance(20, 6), algorithm_factory=Trivial)


def test_cover_detects_mismatched_algorithm():
    inst = Instance(6, 3)
    adv = CoverAdversary(inst, algorithm_factory=Pigeonhole)
    with pytest.raises(ValueError):
        adv.next([6])


def test_echo_only_plays_previous_outputs():
    inst = Instance(50, 10)
    from mif.algorithms import ZeroError
    tr = play(ZeroError(inst, 3), EchoAdversary(), inst)
    answers = [tr.initial_output] + tr.outputs
    assert tr.inputs == answers[:-1]


@pytest.mark.parametrize("n, r", list((n, r) for n in range(2, 6) for r in range(1, n)))
def test_every_adversary_emits_in_range(n, r):
    inst = Instance(n, r, 0.5)
    for adv in [EchoAdversary(inst), UniformAdversary(inst, 1),
                static_adversary([n] * r)(inst, 0),
                CoverAdversary(inst, algorithm_factory=Trivial)]:
        tr = play(Trivial(inst), adv, inst)
        assert all(1 <= e <= n for e in tr.inputs)
