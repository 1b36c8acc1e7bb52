"""Problem definition, lifecycle contracts and transcript checking.

Elements are 1-based integers in ``[n] = {1, ..., n}`` on every interface.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

Probability = Union[float, Fraction]

MODELS = ("oracle", "tape", "seed", "deterministic")


class ParameterError(ValueError):
    """An instance or algorithm parameter violates its constraint."""


class Aborted(Exception):
    """Raised by ``update`` when an algorithm gives up.

    Abort is terminal: every later ``update`` or ``query`` raises it again.
    """


class SoundnessViolation(AssertionError):
    """A sound algorithm produced an output already present in the stream."""


@dataclass(frozen=True)
class Instance:
    n: int
    r: int
    delta: Probability = 1.0

    def __post_init__(self):
        if self.n < 1:
            raise ParameterError("n must be >= 1")
        if self.r < 1:
            raise ParameterError("r must be >= 1")
        if self.r >= self.n:
            raise ParameterError("r must be < n")
        if not 0 < self.delta <= 1:
            raise ParameterError("delta must be in (0, 1]")


def new_instance(n: int, r: int, delta: Probability = 1.0) -> Instance:
    return Instance(int(n), int(r), delta)


def bits_for(count: int) -> int:
    """Bits of a fixed-width field holding one of ``count`` values."""
    if count <= 1:
        return 0
    return (count - 1).bit_length()


def to_bits(value: int, width: int) -> str:
    if width == 0:
        if value != 0:
            raise ValueError(f"{value} does not fit in 0 bits")
        return ""
    if value < 0 or value >> width:
        raise ValueError(f"{value} does not fit in {width} bits")
    return format(value, f"0{width}b")


class BitReader:
    def __init__(self, bits: str):
        self.bits = bits
        self.pos = 0

    def read(self, width: int) -> int:
        if self.pos + width > len(self.bits):
            raise ValueError("truncated encoding")
        chunk = self.bits[self.pos:self.pos + width]
        self.pos += width
        return int(chunk, 2) if chunk else 0

    def done(self) -> bool:
        return self.pos == len(self.bits)


def snap_floor(x: float) -> int:
    """``floor`` that treats values within 1e-9 (relative) of an integer as that integer."""
    k = round(x)
    if abs(x - k) <= 1e-9 * max(1.0, abs(x)):
        return int(k)
    return math.floor(x)


def snap_ceil(x: float) -> int:
    k = round(x)
    if abs(x - k) <= 1e-9 * max(1.0, abs(x)):
        return int(k)
    return math.ceil(x)


class MIFAlgorithm:
    """Base class for streaming algorithms.

    Subclasses are built as ``cls(instance, seed)`` and implement ``update``,
    ``query``, ``encode``, ``state_bits`` and ``decode``.  ``query`` never
    mutates the state.
    """

    name = "base"
    model = "deterministic"
    # Sound algorithms never emit an invalid output unless they abort.
    sound = True

    instance: Instance
    seed: int

    def update(self, e: int) -> None:
        raise NotImplementedError

    def query(self) -> int:
        raise NotImplementedError

    def encode(self) -> str:
        raise NotImplementedError

    def state_bits(self) -> int:
        return len(self.encode())

    @classmethod
    def decode(cls, instance: Instance, seed: int, bits: str) -> "MIFAlgorithm":
        raise NotImplementedError

    def oracle_random_bits(self) -> int:
        return 0

    def seed_bits(self) -> int:
        return 0

    def copy(self) -> "MIFAlgorithm":
        raise NotImplementedError

    def _check_element(self, e: int) -> None:
        if not 1 <= e <= self.instance.n:
            raise ValueError(f"element {e} outside [1, {self.instance.n}]")


class Adversary:
    """Chooses the next stream element from the algorithm's output history."""

    def next(self, history: Sequence[int]) -> int:
        raise NotImplementedError


@dataclass
class Transcript:
    """Record of one game.

    ``outputs[i]`` is the answer given after ``inputs[i]`` was processed;
    ``initial_output`` is the answer on the empty stream.  Indices in
    ``aborted_at`` and ``first_failure`` are 1-based positions in ``inputs``.
    """

    inputs: list = field(default_factory=list)
    outputs: list = field(default_factory=list)
    initial_output: Optional[int] = None
    aborted_at: Optional[int] = None
    first_failure: Optional[int] = None
    state_bits: list = field(default_factory=list)

    @property
    def failed(self) -> bool:
        return self.first_failure is not None or self.aborted_at is not None

    @property
    def final_failed(self) -> bool:
        """Static-setting judgment: only the answer after the last element counts."""
        if self.aborted_at is not None:
            return True
        if not self.outputs:
            return False
        return self.outputs[-1] in set(self.inputs)

    def to_dict(self) -> dict:
        return {
            "inputs": list(self.inputs),
            "outputs": list(self.outputs),
            "initial_output": self.initial_output,
            "aborted_at": self.aborted_at,
            "first_failure": self.first_failure,
            "state_bits": list(self.state_bits),
        }


@dataclass(frozen=True)
class ValidityReport:
    first_failure: Optional[int]
    aborted_at: Optional[int]
    final_failure: bool

    @property
    def failed(self) -> bool:
        return self.first_failure is not None or self.aborted_at is not None


def check_transcript(instance: Instance, t: Transcript) -> ValidityReport:
    inputs, outputs = list(t.inputs), list(t.outputs)
    if len(inputs) > instance.r:
        raise ValueError(f"transcript has {len(inputs)} inputs, more than r={instance.r}")
    expected = len(inputs) - 1 if t.aborted_at is not None else len(inputs)
    if t.aborted_at is not None and t.aborted_at != len(inputs):
        raise ValueError("aborted_at must index the last input")
    if len(outputs) != expected:
        raise ValueError(
            f"length mismatch: {len(inputs)} inputs, {len(outputs)} outputs")
    for x in inputs + outputs:
        if not 1 <= x <= instance.n:
            raise ValueError(f"element {x} outside [1, {instance.n}]")

    seen = set()
    first_failure = None
    for i, (e, o) in enumerate(zip(inputs, outputs), start=1):
        seen.add(e)
        if o in seen:
            first_failure = i
            break
    final_failure = t.aborted_at is not None or bool(outputs and outputs[-1] in set(inputs))
    return ValidityReport(first_failure, t.aborted_at, final_failure)


@dataclass(frozen=True)
class SpaceReport:
    model: str
    max_state_bits: int
    mean_state_bits: float
    oracle_random_bits: int
    seed_bits: int

    def __post_init__(self):
        if self.model not in MODELS:
            raise ValueError(f"unknown model {self.model!r}")
        if self.model == "deterministic" and (self.oracle_random_bits or self.seed_bits):
            raise ValueError("deterministic algorithms use no random bits")
        if self.model == "seed" and self.oracle_random_bits:
            raise ValueError("random-start algorithms have no oracle bits")
