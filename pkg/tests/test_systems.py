from fractions import Fraction as Fr

import pytest
from hypothesis import given, strategies as st

from hmchaos.errors import ParameterError
from hmchaos.metric_core import FiniteSet
from hmchaos.multimap import iterate, step
from hmchaos.systems import example2_composite, fixture, fixture_names, parse_system

from oracles import tent

dyadic = st.integers(0, 2 ** 10).map(lambda j: Fr(j, 2 ** 10))


def test_example1_tent_values():
    f2 = fixture("example1").maps[1]
    assert f2(Fr(1, 2)) == 1 and f2(1) == 0


def test_example3_reflection():
    f1, f2 = fixture("example3").maps
    for x in (0, Fr(1, 4), Fr(1, 2), 1):
        assert f1(x) + f2(x) == 1


def test_example2_plateaus():
    f1, f2 = fixture("example2").maps
    assert f1(Fr(3, 4)) == 1 and f2(Fr(1, 4)) == 1


@given(dyadic)
def test_example2_patches_the_tent(x):
    f1, f2 = fixture("example2").maps
    f = example2_composite()
    assert f(x) == tent(x)
    # f1 agrees with f left of 1/2, f2 right of it
    assert (f1(x) if x <= Fr(1, 2) else f2(x)) == f(x)


@given(dyadic, st.integers(2, 12))
def test_example2_square_contains_ends(x, n):
    F2 = fixture("example2").with_power(2)
    assert {0, 1} <= set(iterate(F2, x, n).points)


def test_unknown_fixture_lists_names():
    with pytest.raises(ParameterError) as err:
        fixture("nope")
    for name in ("example1", "tent", "identity"):
        assert name in str(err.value)
    assert "const:<dyadic>" in fixture_names()


def test_const_fixture():
    F = fixture("const:3/8")
    assert step(F, FiniteSet([Fr(0)])).points == (Fr(3, 8),)


def test_parse_inline():
    F = parse_system("pwl: [(0,0),(1/2,1),(1,0)]; const: 0")
    assert F.m == 2
    assert iterate(F, Fr(1, 4), 2) == iterate(fixture("example1"), Fr(1, 4), 2)
    assert parse_system({"maps": ["shift", "const-seq: 0*"]}).space == "symbol"
    with pytest.raises(ParameterError):
        parse_system("warp: 3")


def test_describe_round_trip():
    F = fixture("example3")
    G = parse_system(";".join(F.describe()))
    assert G.describe() == F.describe()
