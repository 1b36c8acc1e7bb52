"""Adversaries choosing stream elements from the algorithm's past outputs.

Each adversary is built as ``Cls(instance, seed)`` (``StaticAdversary``
and ``CoverAdversary`` take extra arguments; bind them with
``functools.partial`` to get a factory).
"""

from __future__ import annotations

from functools import partial
from typing import Callable, Sequence

from .core import Adversary, Instance, MIFAlgorithm
from .rand import SeededSource


class StaticAdversary(Adversary):
    """Plays a fixed stream regardless of the outputs."""

    name = "static"

    def __init__(self, instance: Instance, seed: int = 0, stream: Sequence[int] = ()):
        stream = list(stream)
        if len(stream) > instance.r:
            raise ValueError(f"stream longer than r={instance.r}")
        for e in stream:
            if not 1 <= e <= instance.n:
                raise ValueError(f"element {e} outside [1, {instance.n}]")
        self.stream = stream

    def next(self, history):
        # history holds o_0 .. o_{i-1} when e_i is requested
        k = max(len(history) - 1, 0)
        if k >= len(self.stream):
            raise IndexError("static stream exhausted")
        return self.stream[k]


class EchoAdversary(Adversary):
    """Feeds the latest output straight back as the next element."""

    name = "echo"

    def __init__(self, instance: Instance | None = None, seed: int = 0):
        pass

    def next(self, history):
        if not history:
            raise ValueError("echo adversary needs at least one output")
        return history[-1]


class UniformAdversary(Adversary):
    """Independent uniform elements of ``[n]``, ignoring the outputs."""

    name = "uniform"

    def __init__(self, instance: Instance, seed: int = 0):
        self.n = instance.n
        self.src = SeededSource(seed)

    def next(self, history):
        return self.src.uniform(self.n)


def static_adversary(stream: Sequence[int]) -> Callable[[Instance, int], StaticAdversary]:
    return partial(StaticAdversary, stream=tuple(stream))


# Exhaustive forward search is n**k per query; keep it at desk scale.
COVER_MAX_N = 6
COVER_MAX_R = 5


def reachable_outputs(alg: MIFAlgorithm, k: int, memo: dict | None = None) -> frozenset:
    """Outputs reachable from ``alg``'s state after exactly ``k`` more elements.

    Memoised on ``(encode(state), k)``; valid only while the algorithm's
    hidden randomness is fixed, which holds within one seeded instance.
    """
    if memo is None:
        memo = {}
    key = (alg.encode(), k)
    hit = memo.get(key)
    if hit is not None:
        return hit
    if k == 0:
        out = frozenset([alg.query()])
    else:
        acc = set()
        for e in range(1, alg.instance.n + 1):
            nxt = alg.copy()
            nxt.update(e)
            acc |= reachable_outputs(nxt, k - 1, memo)
        out = frozenset(acc)
    memo[key] = out
    return out


def enumerate_outputs(alg: MIFAlgorithm, k: int) -> frozenset:
    """Same set as ``reachable_outputs`` by running every stream in ``[n]**k`` from scratch."""
    from itertools import product

    outs = set()
    for alpha in product(range(1, alg.instance.n + 1), repeat=k):
        run = alg.copy()
        for e in alpha:
            run.update(e)
        outs.add(run.query())
    return frozenset(outs)


class CoverAdversary(Adversary):
    """Forces errors on output-deficient deterministic algorithms.

    Keeps its own copy of the (deterministic or fixed-seed) algorithm and
    replays its past inputs into it, which yields the algorithm's state
    from the output history alone.  With ``k`` elements left, let ``F`` be
    the outputs reachable after exactly ``k`` more elements.  If
    ``|F| <= k`` the adversary commits to a stream containing all of ``F``,
    so the final answer lies in the stream.  Otherwise it plays the element
    that shrinks ``F`` the most (smallest element on ties).
    """

    name = "cover"

    def __init__(self, instance: Instance, seed: int = 0, algorithm_factory=None, algorithm_seed: int = 0):
        if instance.n > COVER_MAX_N or instance.r > COVER_MAX_R:
            raise ValueError(
                f"cover adversary limited to n <= {COVER_MAX_N}, r <= {COVER_MAX_R}")
        self.instance = instance
        self.sim = algorithm_factory(instance, algorithm_seed)
        self.memo: dict = {}
        self.plan: list[int] = []
        self.played = 0

    def next(self, history):
        r = self.instance.r
        left = r - self.played
        if left <= 0:
            raise IndexError("stream already has r elements")
        if history and history[-1] != self.sim.query():
            raise ValueError("outputs disagree with the simulated algorithm")
        if not self.plan:
            reach = reachable_outputs(self.sim, left, self.memo)
            if len(reach) <= left:
                cover = sorted(reach)
                self.plan = cover + [cover[0]] * (left - len(cover))
        if self.plan:
            e = self.plan.pop(0)
        else:
            e = self._greedy(left)
        self.sim.update(e)
        self.played += 1
        return e

    def _greedy(self, left):
        best, best_size = None, None
        for e in range(1, self.instance.n + 1):
            nxt = self.sim.copy()
            nxt.update(e)
            size = len(reachable_outputs(nxt, left - 1, self.memo))
            if best_size is None or size < best_size:
                best, best_size = e, size
        return best


def cover_adversary(algorithm_factory, algorithm_seed: int = 0):
    return partial(CoverAdversary, algorithm_factory=algorithm_factory,
                   algorithm_seed=algorithm_seed)


ADVERSARIES = {
    "echo": EchoAdversary,
    "uniform": UniformAdversary,
}


def parse_adversary(spec: str):
    """Factory for ``echo``, ``uniform`` or ``static:<comma separated stream>``."""
    if spec.startswith("static:"):
        body = spec[len("static:"):]
        stream = [int(x) for x in body.split(",") if x.strip()]
        return static_adversary(stream)
    if spec in ADVERSARIES:
        return ADVERSARIES[spec]
    raise ValueError(f"unknown adversary {spec!r}")
