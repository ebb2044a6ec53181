from fractions import Fraction as Fr

import pytest

from hmchaos.errors import ParameterError, SearchExhausted
from hmchaos.indicators.profile import distributional_profile_seq
from hmchaos.indicators.report import ChaosReport
from hmchaos.indicators.synthesis import synthesize_dc_pair, verify_dc_seq
from hmchaos.metric_core import FiniteSet, OpenRegion, hausdorff, region_contains_set, ball_region
from hmchaos.multimap import iterate
from hmchaos.systems import example1, example3

A1 = FiniteSet([Fr(0)])
A2 = FiniteSet([Fr(0), Fr(1)])


@pytest.fixture(scope="module")
def family6():
    return synthesize_dc_pair(example1(), A1, A2, 6)


def test_depth_one_is_trivial():
    fam = synthesize_dc_pair(example1(), A1, A2, 1)
    assert len(fam.members) == 2 and len(fam.times) == 1
    whole = OpenRegion.whole()
    for _, x in fam.members:
        assert region_contains_set(iterate(example1(), x, fam.times[0]), whole)


def test_depth_three_replays():
    F = example1()
    fam = synthesize_dc_pair(F, A1, A2, 3)
    assert len(fam.members) == 8
    assert list(fam.times) == sorted(set(fam.times))
    for word, x in fam.members:
        for k, p in enumerate(fam.times, start=1):
            target = A1 if word[k - 1] == "1" else A2
            assert hausdorff(iterate(F, x, p), target) < Fr(1, k)
            assert region_contains_set(iterate(F, x, p), ball_region(target, Fr(1, k)))
    assert len({x for _, x in fam.members}) == 8


def test_equal_targets_rejected():
    with pytest.raises(ParameterError):
        synthesize_dc_pair(example1(), A1, A1, 3)


def test_targets_must_be_range_elements():
    with pytest.raises(ParameterError):
        synthesize_dc_pair(example1(), FiniteSet([Fr(1, 2)]), A2, 2)


def test_exhaustion_names_level():
    with pytest.raises(SearchExhausted) as err:
        synthesize_dc_pair(example1(), A1, A2, 6, horizon=6, max_refinements=0)
    assert err.value.level >= 2 and set(err.value.choice) <= {"1", "2"}


def test_restricted_start_region():
    U0 = OpenRegion.from_text("(1/4,1/2)")
    fam = synthesize_dc_pair(example1(), A1, A2, 3, U0=U0)
    assert all(x in U0 for _, x in fam.members)


def test_family6_replays(family6):
    assert family6.verify(example1()) == []
    assert len(family6.members) == 64


def test_counting_bounds(family6):
    F = example1()
    cx, cy = "111111", "112222"
    r = verify_dc_seq(F, (family6.point(cx), family6.point(cy)), family6.times,
                      Fr(1, 2), Fr(1, 4), (cx, cy))
    assert r.found
    by_c = {w["checkpoint"]: w for w in r.witnesses}
    assert by_c[2]["type"] == "agree" and by_c[2]["holds"]
    assert by_c[3]["type"] == "disagree" and by_c[3]["holds"]


def test_counting_from_gaps(family6):
    F = example1()
    x, y = family6.point("111111"), family6.point("112222")
    r = verify_dc_seq(F, (x, y), family6.times, Fr(1, 2), Fr(1, 4))
    assert [w["type"] for w in r.witnesses] == ["agree", "disagree"]


def test_identical_points(family6):
    x = family6.point("121212")
    r = verify_dc_seq(example1(), (x, x), family6.times, Fr(1, 64), Fr(1, 4))
    assert not r.found
    assert all(w["type"] == "agree" and w["fraction"] == 1 for w in r.witnesses)


def test_profile_along_times(family6):
    F = example1()
    x, y = family6.point("111111"), family6.point("111112")
    prof = distributional_profile_seq(F, x, y, family6.times, [Fr(1, 2), Fr(1)])
    assert prof.upper[1] >= 1 - Fr(1, 6)


def test_report_round_trip(family6):
    r = family6.to_report(example1())
    assert r.kind == "dc-seq" and r.found
    assert ChaosReport.from_json(r.to_json()).to_json() == r.to_json()


def test_example3_targets():
    # example3 images are {t, 1 - t}; {0, 1} and {1/2} are both range elements
    F = example3()
    fam = synthesize_dc_pair(F, FiniteSet([Fr(0), Fr(1)]), FiniteSet([Fr(1, 2)]), 3)
    assert fam.verify(F) == []


def test_verify_parameters(family6):
    with pytest.raises(ParameterError):
        verify_dc_seq(example1(), (0, 0), family6.times, 0, 1)
    with pytest.raises(ParameterError):
        verify_dc_seq(example1(), (0, 0), family6.times, 1, 1, ("11", "12"))
