"""Game execution, error estimation, space profiling and exhaustive checks."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Callable, Optional

from .core import (
    Aborted,
    Adversary,
    Instance,
    MIFAlgorithm,
    SoundnessViolation,
    SpaceReport,
    Transcript,
)
from .rand import derive_trial_seed

AlgorithmFactory = Callable[[Instance, int], MIFAlgorithm]
AdversaryFactory = Callable[[Instance, int], Adversary]

Z95 = 1.959963984540054


def play(algorithm: MIFAlgorithm, adversary: Adversary, instance: Instance,
         rounds: Optional[int] = None) -> Transcript:
    """Run the game ``o_0, e_1, o_1, e_2, ...`` for ``rounds`` (default ``r``) elements.

    Failure is tracked incrementally while playing.  For algorithms flagged
    ``sound`` an invalid output raises ``SoundnessViolation``.
    """
    rounds = instance.r if rounds is None else rounds
    if rounds > instance.r:
        raise ValueError("more rounds than r")
    tr = Transcript()
    tr.initial_output = algorithm.query()
    tr.state_bits.append(algorithm.state_bits())
    history = [tr.initial_output]
    seen = set()
    for i in range(1, rounds + 1):
        e = adversary.next(history)
        tr.inputs.append(e)
        seen.add(e)
        try:
            algorithm.update(e)
        except Aborted:
            tr.aborted_at = i
            break
        o = algorithm.query()
        tr.outputs.append(o)
        tr.state_bits.append(algorithm.state_bits())
        history.append(o)
        if o in seen and tr.first_failure is None:
            tr.first_failure = i
            if algorithm.sound:
                raise SoundnessViolation(
                    f"{algorithm.name} output {o} at step {i}, already in stream {tr.inputs}")
    return tr


@dataclass(frozen=True)
class ErrorEstimate:
    trials: int
    failures: int
    point: float
    ci_low: float
    ci_high: float
    method: str = "wilson"


def wilson_interval(failures: int, trials: int, z: float = Z95) -> tuple[float, float]:
    p = failures / trials
    denom = 1 + z * z / trials
    centre = (p + z * z / (2 * trials)) / denom
    half = z * math.sqrt(p * (1 - p) / trials + z * z / (4 * trials * trials)) / denom
    return max(0.0, centre - half), min(1.0, centre + half)


@dataclass(frozen=True)
class _TrialResult:
    failed: bool
    transcript: Transcript
    model: str
    name: str
    oracle_bits: int
    seed_bits: int


def _run_trial(args) -> _TrialResult:
    alg_factory, adv_factory, instance, trial_seed, judgment = args
    alg = alg_factory(instance, derive_trial_seed(trial_seed, 0))
    adv = adv_factory(instance, derive_trial_seed(trial_seed, 1))
    tr = play(alg, adv, instance)
    failed = tr.final_failed if judgment == "final" else tr.failed
    return _TrialResult(failed, tr, alg.model, alg.name,
                        alg.oracle_random_bits(), alg.seed_bits())


def run_trials(alg_factory, adv_factory, instance, trials, master_seed=0,
               judgment="whole", parallel=1):
    """Yield one ``_TrialResult`` per trial, in trial order."""
    jobs = [(alg_factory, adv_factory, instance, derive_trial_seed(master_seed, i), judgment)
            for i in range(trials)]
    if parallel and parallel > 1:
        with ProcessPoolExecutor(max_workers=parallel) as pool:
            yield from pool.map(_run_trial, jobs, chunksize=max(1, trials // (4 * parallel)))
    else:
        yield from map(_run_trial, jobs)


def estimate_error(algorithm_factory: AlgorithmFactory, adversary_factory: AdversaryFactory,
                   instance: Instance, trials: int, master_seed: int = 0,
                   judgment: str = "whole", parallel: int = 1) -> ErrorEstimate:
    """Monte Carlo failure rate with a 95% Wilson interval.

    ``judgment="whole"`` fails a trial on any invalid output or abort (the
    adaptive setting); ``"final"`` looks only at the last output (the static
    setting).  Trial ``i`` always uses ``derive_trial_seed(master_seed, i)``,
    so results do not depend on ``parallel``.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if judgment not in ("whole", "final"):
        raise ValueError(f"unknown judgment {judgment!r}")
    failures = sum(res.failed for res in run_trials(
        algorithm_factory, adversary_factory, instance, trials, master_seed, judgment, parallel))
    lo, hi = wilson_interval(failures, trials)
    return ErrorEstimate(trials, failures, failures / trials, lo, hi)


def space_profile(algorithm_factory: AlgorithmFactory, adversary_factory: AdversaryFactory,
                  instance: Instance, trials: int, master_seed: int = 0,
                  parallel: int = 1) -> SpaceReport:
    """Encoded state sizes over ``trials`` games.

    ``max_state_bits`` is the maximum over every step of every trial.
    ``mean_state_bits`` is the mean of per-trial maxima, except for the
    zero-error algorithm (expected-space cost) where it averages all steps.
    Random bits are the maximum consumed by any trial.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    per_trial_max = []
    step_total = step_count = 0
    oracle_bits = seed_bits = 0
    for res in run_trials(algorithm_factory, adversary_factory, instance, trials,
                          master_seed, parallel=parallel):
        bits = res.transcript.state_bits
        per_trial_max.append(max(bits))
        step_total += sum(bits)
        step_count += len(bits)
        oracle_bits = max(oracle_bits, res.oracle_bits)
        seed_bits = max(seed_bits, res.seed_bits)
        model, name = res.model, res.name
    if name == "zero":
        mean = step_total / step_count
    else:
        mean = sum(per_trial_max) / len(per_trial_max)
    return SpaceReport(model, max(per_trial_max), mean, oracle_bits, seed_bits)


def exact_classical_failure(n: int, r: int, t: int, stream) -> Fraction:
    """Exact probability that the classical algorithm's hidden list lies inside ``stream``."""
    if t + 1 > n:
        raise ValueError("t + 1 must be <= n")
    d = len(set(stream))
    if d < t + 1:
        return Fraction(0)
    return Fraction(comb(d, t + 1), comb(n, t + 1))


@dataclass(frozen=True)
class VerifyResult:
    passed: bool
    streams: int
    counterexample: Optional[tuple] = None


EXHAUSTIVE_LIMIT = 10 ** 6


def exhaustive_verify(algorithm_factory: AlgorithmFactory, n: int, r: int, seed: int = 0,
                      delta=1.0, every_step: bool = True) -> VerifyResult:
    """Check the algorithm on all ``n**r`` streams.

    The final answer must avoid the whole stream; with ``every_step`` each
    intermediate answer must also avoid its prefix.  Prefixes are shared by
    a depth-first walk that copies the state at each branch.
    """
    if n ** r > EXHAUSTIVE_LIMIT:
        raise ValueError(f"{n}**{r} streams exceeds the {EXHAUSTIVE_LIMIT} limit")
    instance = Instance(n, r, delta)
    root = algorithm_factory(instance, seed)
    count = 0

    def walk(alg, prefix, seen):
        nonlocal count
        depth = len(prefix)
        for e in range(1, n + 1):
            nxt = alg.copy()
            path = prefix + (e,)
            try:
                nxt.update(e)
            except Aborted:
                return path
            o = nxt.query()
            seen2 = seen | {e}
            last = depth + 1 == r
            if o in seen2 and (every_step or last):
                return path
            if last:
                count += 1
            else:
                bad = walk(nxt, path, seen2)
                if bad is not None:
                    return bad
        return None

    bad = walk(root, (), frozenset())
    if bad is not None:
        return VerifyResult(False, count, bad)
    return VerifyResult(True, count)
