from fractions import Fraction

import pytest

from mif.core import (
    Instance,
    ParameterError,
    SpaceReport,
    Transcript,
    bits_for,
    check_transcript,
    new_instance,
    snap_ceil,
    snap_floor,
    to_bits,
)


def test_new_instance_minimal():
    inst = new_instance(4, 2, 0.1)
    assert (inst.n, inst.r, inst.delta) == (4, 2, 0.1)


def test_new_instance_large_config_is_valid():
    assert new_instance(10**6, 10**3, 0.05).r == 1000


@pytest.mark.parametrize(
    "n, r, delta, message",
    [
        (4, 4, 0.1, "r must be < n"),
        (4, 5, 0.1, "r must be < n"),
        (0, 1, 0.1, "n must be >= 1"),
        (4, 0, 0.1, "r must be >= 1"),
        (4, 2, 0.0, "delta"),
        (4, 2, 1.5, "delta"),
        (4, 2, -0.2, "delta"),
    ],
)
def test_new_instance_rejects(n, r, delta, message):
    with pytest.raises(ParameterError, match=message):
        new_instance(n, r, delta)


def test_delta_one_and_fraction_accepted():
    assert new_instance(4, 2, 1).delta == 1
    assert new_instance(4, 2, Fraction(1, 3)).delta == Fraction(1, 3)


def _t(inputs, outputs, aborted_at=None):
    return Transcript(list(inputs), list(outputs), aborted_at=aborted_at)


def test_check_transcript_no_failure_when_output_unseen():
    rep = check_transcript(Instance(4, 2), _t([1, 2], [3, 3]))
    assert rep.first_failure is None and not rep.failed


def test_check_transcript_output_may_equal_a_later_input():
    # outputs[1] = 2 is compared only against inputs[1..1] = {1}
    inputs, outputs = [1, 2], [2, 3]
    assert outputs[0] not in inputs[:1]
    rep = check_transcript(Instance(4, 2), _t(inputs, outputs))
    assert rep.first_failure is None


def test_check_transcript_first_failure_index():
    rep = check_transcript(Instance(4, 2), _t([1, 2], [3, 1]))
    assert rep.first_failure == 2
    assert rep.failed and rep.final_failure


def test_check_transcript_reports_least_failure():
    rep = check_transcript(Instance(6, 4), _t([1, 2, 3, 4], [2, 1, 5, 3]))
    assert rep.first_failure == 2


def test_check_transcript_abort_is_failure():
    rep = check_transcript(Instance(6, 3), _t([1, 2], [3], aborted_at=2))
    assert rep.failed and rep.first_failure is None and rep.aborted_at == 2


def test_check_transcript_length_mismatch():
    with pytest.raises(ValueError, match="length mismatch"):
        check_transcript(Instance(4, 2), _t([1, 2], [3]))
    with pytest.raises(ValueError):
        check_transcript(Instance(4, 2), _t([1, 2], [3, 3], aborted_at=2))


def test_check_transcript_rejects_out_of_range():
    with pytest.raises(ValueError):
        check_transcript(Instance(4, 2), _t([1, 5], [3, 3]))


def test_final_only_judgment_differs_from_whole_sequence():
    # intermediate output 1 is invalid, final output 4 is fine
    tr = _t([1, 2, 3], [1, 4, 4])
    rep = check_transcript(Instance(6, 3), tr)
    assert rep.first_failure == 1
    assert not rep.final_failure
    assert rep.failed and not tr.final_failed


@pytest.mark.parametrize("count, width", [(0, 0), (1, 0), (2, 1), (3, 2), (8, 3), (9, 4), (1024, 10), (1025, 11)])
def test_bits_for(count, width):
    assert bits_for(count) == width


def test_to_bits():
    assert to_bits(5, 4) == "0101"
    assert to_bits(0, 0) == ""
    with pytest.raises(ValueError):
        to_bits(8, 3)


def test_snap_rounding_absorbs_float_noise():
    assert snap_floor(5.999999999999999) == 6
    assert snap_ceil(5.000000000000001) == 5
    assert snap_floor(5.5) == 5 and snap_ceil(5.5) == 6
    assert snap_floor(3.3219) == 3


def test_space_report_model_invariants():
    SpaceReport("oracle", 10, 9.5, 40, 0)
    SpaceReport("seed", 100, 90.0, 0, 60)
    with pytest.raises(ValueError):
        SpaceReport("deterministic", 10, 10.0, 1, 0)
    with pytest.raises(ValueError):
        SpaceReport("seed", 10, 10.0, 3, 0)
    with pytest.raises(ValueError):
        SpaceReport("quantum", 10, 10.0, 0, 0)
