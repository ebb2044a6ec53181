from fractions import Fraction as Fr

import pytest
from hypothesis import given, strategies as st

from hmchaos.errors import ParameterError
from hmchaos.indicators.profile import (
    TimeSequence, default_window, distributional_profile, distributional_profile_seq,
    profile_from_gaps,
)
from hmchaos.indicators.report import ChaosReport
from hmchaos.metric_core import FiniteSet, OpenRegion, SymbolPoint
from hmchaos.systems import example1, example3

dyadic = st.integers(0, 2 ** 8).map(lambda j: Fr(j, 2 ** 8))
GRID = [Fr(1, 8), Fr(1, 4), Fr(1, 2), Fr(1)]


def test_window_rule():
    assert default_window(50) == 10
    assert default_window(400) == 40
    assert default_window(4) == 4


def test_identical_points():
    prof = distributional_profile(example1(), Fr(1, 3), Fr(1, 3), 30, GRID)
    assert all(v == 1 for v in prof.phi)
    assert prof.phi_at(7, Fr(1, 8)) == 1


def test_negative_threshold():
    prof = distributional_profile(example1(), 0, Fr(1, 3), 10, [Fr(-1, 2), Fr(1, 2)])
    assert prof.phi_at(10, Fr(-1, 2)) == 0
    assert prof.phi[0] == 0


def test_example1_values():
    # gaps are 1/3 then 2/3 forever
    prof = distributional_profile(example1(), 0, Fr(1, 3), 12, [Fr(1, 2), Fr(1)])
    assert prof.phi == (Fr(1, 12), Fr(1))
    assert prof.lower[0] == Fr(1, 12) and prof.upper[0] == Fr(1, 2)


def test_grid_must_ascend():
    with pytest.raises(ParameterError):
        distributional_profile(example1(), 0, 1, 10, [Fr(1, 2), Fr(1, 4)])
    with pytest.raises(ParameterError):
        distributional_profile(example1(), 0, 1, 10, GRID, window=11)


@given(dyadic, dyadic, st.integers(1, 40))
def test_profile_invariants(x, y, n):
    prof = distributional_profile(example3(), x, y, n, GRID)
    for k in range(1, n + 1):
        vals = [prof.phi_at(k, t) for t in GRID]
        assert vals == sorted(vals)
        assert all(0 <= v <= 1 for v in vals)
    assert all(lo <= hi for lo, hi in zip(prof.lower, prof.upper))


@given(dyadic, dyadic, st.integers(2, 20))
def test_sequence_profile_reduces(x, y, n):
    # counting over p = (1..n) is the plain profile shifted by one index
    F = example1()
    seq = distributional_profile_seq(F, x, y, range(1, n + 1), GRID)
    plain = distributional_profile(F, x, y, n + 1, GRID)
    assert seq.gaps == plain.gaps[1:]


def test_time_sequence_checks():
    assert len(TimeSequence((1, 3, 7))) == 3
    for bad in [(), (0, 1), (2, 2), (3, 1)]:
        with pytest.raises(ParameterError):
            TimeSequence(bad)


def test_rows_shape():
    prof = profile_from_gaps([Fr(0), Fr(1)], [Fr(1, 2)], 1)
    assert list(prof.rows()) == [(1, Fr(1, 2), Fr(1)), (2, Fr(1, 2), Fr(1, 2))]


class TestReport:
    def test_round_trip(self):
        r = ChaosReport("sensitivity", True,
                        [{"x": Fr(3, 8), "U": OpenRegion.from_text("(1/4,1/2)"),
                          "A": FiniteSet([Fr(0), Fr(1)]), "p": SymbolPoint("01", "1*")}],
                        {"delta": Fr(1, 4), "mode": "exact"}, 20)
        text = r.to_json()
        back = ChaosReport.from_json(text)
        assert back.to_json() == text
        w = back.witnesses[0]
        assert w["x"] == "3/8" and w["A"] == "{0/1, 1/1}" and w["p"] == "0~1*"
        assert list(r.to_dict()) == ["kind", "found", "witnesses", "params", "horizon", "caveat"]
        assert r.caveat == "finite-horizon estimate"

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            ChaosReport("chaos", True)

    def test_missing_field(self):
        with pytest.raises(ValueError):
            ChaosReport.from_dict({"kind": "dc"})
