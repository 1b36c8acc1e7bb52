"""Streaming algorithms for finding an element missing from a stream."""

from .adversaries import (
    CoverAdversary,
    EchoAdversary,
    StaticAdversary,
    UniformAdversary,
    cover_adversary,
    static_adversary,
)
from .algorithms import (
    ALGORITHMS,
    BatchList,
    BatchParams,
    Classical,
    Fallback,
    HiddenList,
    Pigeonhole,
    Trivial,
    ZeroError,
    batch_list_params,
    classical_params,
    hidden_list_params,
    make_batch,
    pigeonhole_params,
)
from .avoid import avoid_min_messages
from .core import (
    Aborted,
    Instance,
    ParameterError,
    SoundnessViolation,
    SpaceReport,
    Transcript,
    ValidityReport,
    check_transcript,
    new_instance,
)
from .harness import (
    ErrorEstimate,
    estimate_error,
    exact_classical_failure,
    exhaustive_verify,
    play,
    space_profile,
)
from .rand import SeededSource, derive_trial_seed, sample_distinct_sequence

__version__ = "0.1.0"

__all__ = [
    "Aborted",
    "ALGORITHMS",
    "avoid_min_messages",
    "batch_list_params",
    "BatchList",
    "BatchParams",
    "check_transcript",
    "Classical",
    "classical_params",
    "cover_adversary",
    "CoverAdversary",
    "derive_trial_seed",
    "EchoAdversary",
    "ErrorEstimate",
    "estimate_error",
    "exact_classical_failure",
    "exhaustive_verify",
    "Fallback",
    "hidden_list_params",
    "HiddenList",
    "Instance",
    "make_batch",
    "new_instance",
    "ParameterError",
    "Pigeonhole",
    "pigeonhole_params",
    "play",
    "sample_distinct_sequence",
    "SeededSource",
    "SoundnessViolation",
    "space_profile",
    "SpaceReport",
    "static_adversary",
    "StaticAdversary",
    "Transcript",
    "Trivial",
    "UniformAdversary",
    "ValidityReport",
    "ZeroError",
]
