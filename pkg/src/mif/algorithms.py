"""Missing-item-finding streaming algorithms.

Every algorithm is constructed as ``Cls(instance, seed)`` and follows the
``MIFAlgorithm`` lifecycle.  Logs written ``log`` are base 2; ``ln`` is
natural.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .core import (
    Aborted,
    BitReader,
    Instance,
    MIFAlgorithm,
    snap_ceil,
    snap_floor,
    bits_for,
    to_bits,
)
from .rand import SeededSource, sample_distinct_sequence


def _log2_inv(delta) -> float:
    if isinstance(delta, Fraction):
        return math.log2(delta.denominator) - math.log2(delta.numerator)
    return -math.log2(delta)


def _ln_inv(delta) -> float:
    return _log2_inv(delta) * math.log(2)


# ---------------------------------------------------------------- parameters

def classical_params(n: int, r: int, delta) -> int:
    """``t = min(r, floor(log(1/delta) / log(n/r)))``."""
    num = _log2_inv(delta)
    den = math.log2(n) - math.log2(r)
    # A tiny log(n/r) blows the quotient up; the min with r settles it first.
    if den <= num / r:
        return r
    return min(r, snap_floor(num / den))


def hidden_list_params(n: int, r: int, delta) -> int:
    return min(r, snap_ceil(3 * r * r / n + _ln_inv(delta)))


def pigeonhole_params(n: int, r: int) -> tuple[int, int]:
    """Return ``(s, t)`` with ``s**t <= n`` and ``t*(s-1) >= r``."""
    lr = math.log2(r + 1)
    q = min(math.sqrt(r * lr), math.log2(n))
    t = max(1, snap_floor(q / lr))
    s = -(-r // t) + 1
    while s ** t > n and t > 1:
        t -= 1
        s = -(-r // t) + 1
    assert s ** t <= n and t * (s - 1) >= r, (n, r, s, t)
    return s, t


@dataclass(frozen=True)
class BatchParams:
    w: int
    t: int


@dataclass(frozen=True)
class Fallback:
    """The batch-list preconditions fail; the trivial algorithm is used instead."""

    reason: str


def batch_list_params(n: int, r: int, delta) -> BatchParams | Fallback:
    if 32 * r >= n:
        return Fallback("r >= n/32")
    ln_inv = _ln_inv(delta)
    if ln_inv > r / 6:
        return Fallback("delta < exp(-r/6)")
    bounds = [math.sqrt(r * math.log2(n)), n / (32 * r)]
    if ln_inv > 0:
        bounds.append(r / (6 * ln_inv))
    w = snap_floor(min(bounds))
    assert w >= 1, (n, r, delta, w)
    t = -(-2 * r // w)
    return BatchParams(w, t)


# ---------------------------------------------------------------- algorithms

def _checked_list(hidden, length, m):
    hidden = list(hidden)
    if len(hidden) != length or len(set(hidden)) != length:
        raise ValueError(f"hidden list must be {length} distinct elements")
    if not all(1 <= v <= m for v in hidden):
        raise ValueError(f"hidden list elements must lie in [1, {m}]")
    return hidden


class _Base(MIFAlgorithm):
    # Attributes never mutated after construction; shared between copies.
    _shared: tuple = ("instance",)

    def copy(self):
        new = object.__new__(type(self))
        for k, v in self.__dict__.items():
            if k not in self._shared and isinstance(v, (list, set, dict)):
                v = v.copy()
            new.__dict__[k] = v
        return new

    def _guard(self):
        if self.aborted:
            raise Aborted(f"{self.name} already aborted")


class Trivial(_Base):
    """Remember which of ``1..r`` appeared; answer the least unseen one, else ``r+1``."""

    name = "trivial"
    model = "deterministic"

    def __init__(self, instance: Instance, seed: int = 0):
        self.instance = instance
        self.seed = seed
        self.x = [False] * instance.r
        self.aborted = False

    def update(self, e):
        self._check_element(e)
        if e <= self.instance.r:
            self.x[e - 1] = True

    def query(self):
        for j, bit in enumerate(self.x):
            if not bit:
                return j + 1
        return self.instance.r + 1

    def encode(self):
        return "".join("1" if b else "0" for b in self.x)

    def state_bits(self):
        return self.instance.r

    @classmethod
    def decode(cls, instance, seed, bits, **kwargs):
        if len(bits) != instance.r:
            raise ValueError("bad encoding length")
        alg = cls(instance, seed, **kwargs)
        alg.x = [b == "1" for b in bits]
        return alg


class Classical(_Base):
    """Track the first ``t`` entries of a hidden random list; fall back to entry ``t+1``.

    Correct on any fixed stream except with probability
    ``C(d, t+1) / C(n, t+1)`` where ``d`` is the number of distinct stream
    elements.  Not robust to adaptive adversaries.
    """

    name = "classical"
    model = "oracle"
    sound = False
    _shared = ("instance", "L", "pos")

    def __init__(self, instance: Instance, seed: int = 0, t: int | None = None,
                 hidden: list[int] | None = None):
        self.instance = instance
        self.seed = seed
        self.t = classical_params(instance.n, instance.r, instance.delta) if t is None else t
        if hidden is None:
            src = SeededSource(seed)
            self.L = sample_distinct_sequence(instance.n, self.t + 1, src)
            self._oracle_bits = src.bits_consumed
        else:
            self.L = _checked_list(hidden, self.t + 1, instance.n)
            self._oracle_bits = 0
        self.pos = {v: j for j, v in enumerate(self.L[:self.t])}
        self.x = [False] * self.t
        self.aborted = False

    def update(self, e):
        self._check_element(e)
        j = self.pos.get(e)
        if j is not None:
            self.x[j] = True

    def query(self):
        for j, bit in enumerate(self.x):
            if not bit:
                return self.L[j]
        return self.L[self.t]

    def encode(self):
        return "".join("1" if b else "0" for b in self.x)

    def state_bits(self):
        return self.t

    def oracle_random_bits(self):
        return self._oracle_bits

    @classmethod
    def decode(cls, instance, seed, bits, **kwargs):
        alg = cls(instance, seed, **kwargs)
        if len(bits) != alg.t:
            raise ValueError("bad encoding length")
        alg.x = [b == "1" for b in bits]
        return alg


class HiddenList(_Base):
    """Adversarially robust algorithm walking a hidden random list ``L_1..L_{r+1}``.

    ``J`` holds (as 1-based indices into ``L``) the stream elements seen
    ahead of the cursor ``c``.  Aborts once ``|J| > t``.

    Encoding: ``c - 1`` in ``ceil(log(r+1))`` bits, ``|J|`` in
    ``ceil(log r)`` bits, then each index of ``J`` minus one, ascending, in
    ``ceil(log r)`` bits.  Fixed-width header plus a length-prefixed list,
    so the code is prefix-free.  ``L`` is oracle randomness and is not
    part of the state.
    """

    name = "hidden"
    model = "oracle"
    _shared = ("instance", "L", "pos")

    def __init__(self, instance: Instance, seed: int = 0, t: int | None = None,
                 hidden: list[int] | None = None):
        n, r = instance.n, instance.r
        self.instance = instance
        self.seed = seed
        self.t = self._default_t(instance) if t is None else t
        if hidden is None:
            src = SeededSource(seed)
            # index 0 unused so that L[c] matches the 1-based cursor
            self.L = [0] + sample_distinct_sequence(n, r + 1, src)
            self._oracle_bits = src.bits_consumed
        else:
            self.L = [0] + _checked_list(hidden, r + 1, n)
            self._oracle_bits = 0
        self.pos = {v: i for i, v in enumerate(self.L) if i}
        self.c = 1
        self.J: set[int] = set()
        self.aborted = False

    @staticmethod
    def _default_t(instance):
        return hidden_list_params(instance.n, instance.r, instance.delta)

    def update(self, e):
        self._guard()
        self._check_element(e)
        L, J, r = self.L, self.J, self.instance.r
        while e == L[self.c] or self.c in J:
            self.c += 1
            assert self.c <= r + 1, "cursor ran past L_{r+1}"
        i = self.pos.get(e)
        if i is not None and self.c < i <= r:
            J.add(i)
        if len(J) > self.t:
            self.aborted = True
            raise Aborted(f"|J| = {len(J)} > t = {self.t}")

    def query(self):
        self._guard()
        return self.L[self.c]

    def encode(self):
        r = self.instance.r
        wc, wj = bits_for(r + 1), bits_for(r)
        parts = [to_bits(self.c - 1, wc), to_bits(len(self.J), wj)]
        parts += [to_bits(i - 1, wj) for i in sorted(self.J)]
        return "".join(parts)

    def state_bits(self):
        r = self.instance.r
        return bits_for(r + 1) + bits_for(r) * (1 + len(self.J))

    def oracle_random_bits(self):
        return self._oracle_bits

    @classmethod
    def decode(cls, instance, seed, bits, **kwargs):
        r = instance.r
        alg = cls(instance, seed, **kwargs)
        rd = BitReader(bits)
        wc, wj = bits_for(r + 1), bits_for(r)
        alg.c = rd.read(wc) + 1
        size = rd.read(wj)
        alg.J = {rd.read(wj) + 1 for _ in range(size)}
        if not rd.done() or len(alg.J) != size:
            raise ValueError("malformed encoding")
        return alg


class ZeroError(HiddenList):
    """The hidden-list algorithm with ``t = r``: never aborts, never errs."""

    name = "zero"

    @staticmethod
    def _default_t(instance):
        return instance.r


class Pigeonhole(_Base):
    """Deterministic iterated-pigeonhole algorithm.

    Reads base-``s`` digits of ``e - 1``, low digit first.  At level ``l``
    the bit vector ``x`` marks which values of digit ``l`` occurred; once a
    single value ``y`` remains free it is fixed into the accumulator ``a``
    and the next digit is tracked.

    Encoding: ``x`` in ``s`` bits, then the pair ``(l, a)`` as an index into
    the ``1 + s + ... + s**(t-1)`` reachable pairs (``a < s**(l-1)``).
    """

    name = "pigeonhole"
    model = "deterministic"
    _shared = ("instance", "powers")

    def __init__(self, instance: Instance, seed: int = 0, params: tuple[int, int] | None = None):
        self.instance = instance
        self.seed = seed
        self.s, self.t = pigeonhole_params(instance.n, instance.r) if params is None else params
        self.powers = [self.s ** j for j in range(self.t + 1)]
        self.x = [False] * self.s
        self.zeros = self.s
        self.ell = 1
        self.a = 0
        self.aborted = False

    def update(self, e):
        self._check_element(e)
        s, x = self.s, self.x
        i = ((e - 1) // self.powers[self.ell - 1]) % s
        if not x[i]:
            x[i] = True
            self.zeros -= 1
        assert self.zeros >= 1, "digit vector filled up"
        if self.ell < self.t and self.zeros == 1:
            y = x.index(False)
            # The chosen digit belongs to the level just completed.
            self.a += y * self.powers[self.ell - 1]
            self.ell += 1
            self.x = [False] * s
            self.zeros = s

    def query(self):
        i = self.x.index(False)
        return self.a + i * self.powers[self.ell - 1] + 1

    def _pair_count(self):
        return sum(self.powers[:self.t])

    def encode(self):
        offset = sum(self.powers[:self.ell - 1]) + self.a
        xs = "".join("1" if b else "0" for b in self.x)
        return xs + to_bits(offset, bits_for(self._pair_count()))

    def state_bits(self):
        return self.s + bits_for(self._pair_count())

    @classmethod
    def decode(cls, instance, seed, bits, **kwargs):
        alg = cls(instance, seed, **kwargs)
        rd = BitReader(bits)
        alg.x = [rd.read(1) == 1 for _ in range(alg.s)]
        alg.zeros = alg.x.count(False)
        offset = rd.read(bits_for(alg._pair_count()))
        if not rd.done():
            raise ValueError("malformed encoding")
        ell = 1
        while offset >= alg.powers[ell - 1]:
            offset -= alg.powers[ell - 1]
            ell += 1
        if ell > alg.t:
            raise ValueError("malformed encoding")
        alg.ell, alg.a = ell, offset
        return alg


class BatchList(_Base):
    """Random-start robust algorithm over blocks of ``w`` consecutive elements.

    A hidden list of ``t`` block ids is drawn once at start and stored in
    the state, so its bits count toward space.  ``x`` tracks coverage of
    the current block ``B_c``; ``J`` marks later blocks already touched by
    the stream.  Aborts when ``c > t``.

    Encoding (fixed width, hence prefix-free): each ``L_j - 1`` in
    ``ceil(log floor(n/w))`` bits, ``c - 1`` in ``ceil(log t)`` bits, ``J``
    as a ``t``-bit mask, ``x`` in ``w`` bits.
    """

    name = "batch"
    model = "seed"
    _shared = ("instance", "L", "pos")

    def __init__(self, instance: Instance, seed: int = 0, params: BatchParams | None = None,
                 hidden: list[int] | None = None):
        n, r = instance.n, instance.r
        if params is None:
            params = batch_list_params(n, r, instance.delta)
        if isinstance(params, Fallback):
            raise ValueError(f"batch list not applicable ({params.reason}); use make_batch")
        self.instance = instance
        self.seed = seed
        self.w, self.t = params.w, params.t
        self.blocks = n // self.w
        if hidden is None:
            self.L = [0] + sample_distinct_sequence(self.blocks, self.t, SeededSource(seed))
        else:
            self.L = [0] + _checked_list(hidden, self.t, self.blocks)
        self.pos = {v: j for j, v in enumerate(self.L) if j}
        self.c = 1
        self.J: set[int] = set()
        self.x = [False] * self.w
        self.ones = 0
        self.aborted = False

    def update(self, e):
        self._guard()
        self._check_element(e)
        w = self.w
        h = (e + w - 1) // w
        j = self.pos.get(h)
        if j is not None and j > self.c:
            self.J.add(j)
        if h == self.L[self.c]:
            k = e - w * (h - 1) - 1
            if not self.x[k]:
                self.x[k] = True
                self.ones += 1
        if self.ones == w:
            self.c += 1
            while self.c in self.J:
                self.c += 1
            self.x = [False] * w
            self.ones = 0
        if self.c > self.t:
            self.aborted = True
            raise Aborted(f"c = {self.c} > t = {self.t}")

    def query(self):
        self._guard()
        j = self.x.index(False) + 1
        return self.w * (self.L[self.c] - 1) + j

    def _widths(self):
        return bits_for(self.blocks), bits_for(self.t)

    def encode(self):
        wl, wc = self._widths()
        parts = [to_bits(v - 1, wl) for v in self.L[1:]]
        parts.append(to_bits(self.c - 1, wc))
        parts.append("".join("1" if j in self.J else "0" for j in range(1, self.t + 1)))
        parts.append("".join("1" if b else "0" for b in self.x))
        return "".join(parts)

    def state_bits(self):
        wl, wc = self._widths()
        return self.t * wl + wc + self.t + self.w

    def seed_bits(self):
        return self.t * self._widths()[0]

    @classmethod
    def decode(cls, instance, seed, bits, **kwargs):
        alg = cls(instance, seed, **kwargs)
        wl, wc = alg._widths()
        rd = BitReader(bits)
        alg.L = [0] + [rd.read(wl) + 1 for _ in range(alg.t)]
        alg.pos = {v: j for j, v in enumerate(alg.L) if j}
        alg.c = rd.read(wc) + 1
        alg.J = {j for j in range(1, alg.t + 1) if rd.read(1)}
        alg.x = [rd.read(1) == 1 for _ in range(alg.w)]
        alg.ones = sum(alg.x)
        if not rd.done():
            raise ValueError("malformed encoding")
        return alg


def make_batch(instance: Instance, seed: int = 0) -> MIFAlgorithm:
    """Batch-list algorithm, or the trivial one when its preconditions fail."""
    params = batch_list_params(instance.n, instance.r, instance.delta)
    if isinstance(params, Fallback):
        return Trivial(instance, seed)
    return BatchList(instance, seed, params)


ALGORITHMS = {
    "trivial": Trivial,
    "classical": Classical,
    "hidden": HiddenList,
    "zero": ZeroError,
    "pigeonhole": Pigeonhole,
    "batch": make_batch,
}


def algorithm_params(name: str, instance: Instance) -> dict:
    n, r, delta = instance.n, instance.r, instance.delta
    if name == "trivial":
        return {}
    if name == "classical":
        return {"t": classical_params(n, r, delta)}
    if name == "hidden":
        return {"t": hidden_list_params(n, r, delta)}
    if name == "zero":
        return {"t": r}
    if name == "pigeonhole":
        s, t = pigeonhole_params(n, r)
        return {"s": s, "t": t}
    if name == "batch":
        p = batch_list_params(n, r, delta)
        if isinstance(p, Fallback):
            return {"fallback": True, "reason": p.reason}
        return {"fallback": False, "w": p.w, "t": p.t}
    raise KeyError(name)
