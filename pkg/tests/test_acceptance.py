"""The ten acceptance criteria, each timed against its runtime budget.

Every test records one PASS/FAIL line in RESULTS; conftest prints them
after the run.  Run directly with ``python3 tests/test_acceptance.py``.
"""
import functools
import random
import re
import sys
import time
from fractions import Fraction as Fr

import pytest

from hmchaos.metric_core import A_POINT, B_POINT, U_POINT, FiniteSet, OpenRegion, hausdorff, region_contains_set, ball_region
from hmchaos.multimap import iterate, orbit
from hmchaos.indicators.probes import dyadic_opens, kato_report, mixing_probe
from hmchaos.indicators.synthesis import synthesize_dc_pair, verify_dc_seq
from hmchaos.symbolic.example4 import example4_system, h_family_point, symbolic_phi, u_visit_frequency, verify_example4
from hmchaos.symbolic.words import WordSystem, block_count, build_word
from hmchaos.systems import example1, example3, identity, parse_system

from oracles import brute_hausdorff, enumerate_images, naive_word, tent

RESULTS = {}


def criterion(key, title, budget):
    """Time the test, fail it if over budget, and record the outcome."""
    def wrap(fn):
        @functools.wraps(fn)
        def run(*args, **kwargs):
            t0 = time.perf_counter()
            try:
                fn(*args, **kwargs)
            except BaseException as exc:
                took = time.perf_counter() - t0
                RESULTS[key] = f"{key} FAIL  {title} ({took:.1f}s): {type(exc).__name__}: {exc}"[:300]
                raise
            took = time.perf_counter() - t0
            ok = took < budget
            RESULTS[key] = f"{key} {'PASS' if ok else 'FAIL'}  {title} ({took:.1f}s, budget {budget}s)"
            assert ok, f"{title} took {took:.1f}s, budget {budget}s"
        return run
    return wrap


def overlapping(text, block):
    return sum(1 for _ in re.finditer(f"(?={block})", text))


@criterion("C1", "word construction", 5)
def test_c1_words():
    assert build_word(1) == "10111"
    for n in range(1, 10):
        assert len(build_word(n)) == 5 ** n
    assert build_word(6) == naive_word(6)


@criterion("C2", "frequency contraction", 60)
def test_c2_contraction():
    words = WordSystem(10)
    B = "10111"
    counts = {k: words.block_count_recursive(k, B) for k in range(1, 11)}
    for k in range(1, 10):
        text = naive_word(k)
        assert counts[k] == overlapping(text, B) == block_count(words.word(k), B)
    for k in range(2, 10):
        assert counts[k + 1] <= 3 * counts[k] + 16, (k, counts[k], counts[k + 1])


@criterion("C3", "SNW decay along u", 60)
def test_c3_snw():
    marks = [5 ** 5, 5 ** 6, 5 ** 7]
    freqs = [u_visit_frequency("10111", n) for n in marks]
    assert freqs[-1] < Fr(1, 5)
    assert freqs[0] > freqs[1] > freqs[2]
    report = verify_example4(K=3, horizon=5 ** 7)
    snw = report.witnesses[0]
    assert snw["ok"]
    decay = snw["decay"][0]
    assert decay["block"] == "10111" and [f for _, f in decay["checkpoints"]] == freqs
    held = {h["cylinder"]: h for h in snw["held"]}
    assert held["00000"]["point"] == A_POINT and held["00000"]["y"] == U_POINT
    assert held["11111"]["point"] == B_POINT
    assert all(h["frequency"] >= Fr(1, 2) for h in snw["held"])
    # the witness frequency for a, counted directly: every F^i(u), i >= 1, contains a
    n = 5 ** 5
    cyl = OpenRegion(cylinders=["00000"])
    F = example4_system()
    hits, A = 0, FiniteSet([U_POINT])
    for _ in range(n):
        hits += any(cyl.contains(p) for p in A.points)
        A = FiniteSet([p.shift(1) for p in A.points] + [A_POINT])
    assert A == iterate(F, U_POINT, n)
    assert Fr(hits, n) >= Fr(1, 2)


@criterion("C4", "example4 DC pair", 120)
def test_c4_dc_pair():
    hx, hy = h_family_point("111"), h_family_point("112")
    assert hx.choices[:2] == hy.choices[:2] and hx.choices[2] != hy.choices[2]
    assert symbolic_phi(hx.point, hy.point, 625, Fr(1, 2)) >= Fr(9, 10)
    assert symbolic_phi(hx.point, hy.point, 5 ** 8, Fr(1)) <= Fr(1, 10)


MIXING_SUITE_V = ["[0,1/8)|(1/2,5/8)", "[0,1/4)"]


@criterion("C5", "mixing on example1", 30)
def test_c5_mixing():
    F = example1()
    for V in (OpenRegion.from_text(v) for v in MIXING_SUITE_V):
        for U in dyadic_opens(4):
            r = mixing_probe(F, U, V, start=10, window=50)
            assert r.found, (U.to_text(), V.to_text())
            w = r.witnesses[0]
            assert w["N"] <= 10
            for n, x in w["hits"]:
                assert x in U and region_contains_set(iterate(F, x, n), V)
            assert [n for n, _ in w["hits"]] == list(range(w["N"], w["N"] + 51))


@criterion("C6", "sensitivity and accessibility", 60)
def test_c6_kato():
    for F in (example1(), example3()):
        r = kato_report(F, Fr(1, 4), Fr(1, 2 ** 10), horizon=64, grid_step=Fr(1, 2 ** 10))
        p = r.witnesses[0]
        assert p["sensitive"] and p["accessible"], F.name
        for w in p["sensitivity_witnesses"]:
            n = w["n"]
            assert hausdorff(iterate(F, w["x"], n), iterate(F, w["y"], n)) > Fr(1, 4)


@criterion("C7", "agreement across powers", 120)
def test_c7_powers():
    flags = {}
    for F in (example1(), example3(), identity()):
        r = kato_report(F, Fr(1, 4), Fr(1, 2 ** 10), horizon=64, powers=(1, 2, 3),
                        grid_step=Fr(1, 2 ** 10))
        assert r.params["agreement"], F.name
        assert len({p["kato"] for p in r.witnesses}) == 1
        flags[F.name] = r.found
    assert flags == {"example1": True, "example3": True, "identity": False}


@criterion("C8", "depth-6 DC synthesis", 120)
def test_c8_synthesis():
    F = example1()
    A1, A2 = FiniteSet([Fr(0)]), FiniteSet([Fr(0), Fr(1)])
    fam = synthesize_dc_pair(F, A1, A2, 6)
    assert len(fam.members) == 64
    for word, x in fam.members:
        for k, p in enumerate(fam.times, start=1):
            target = A1 if word[k - 1] == "1" else A2
            assert region_contains_set(iterate(F, x, p), ball_region(target, Fr(1, k)))
    cx, cy = "111111", "112222"
    r = verify_dc_seq(F, (fam.point(cx), fam.point(cy)), fam.times, Fr(1, 2), Fr(1, 4), (cx, cy))
    checks = {w["checkpoint"]: w for w in r.witnesses}
    assert set(checks) == {2, 3}
    assert all(w["holds"] for w in checks.values())
    assert r.found


def _random_dyadic(rng, bits=8):
    return Fr(rng.randrange(2 ** bits + 1), 2 ** bits)


@criterion("C9", "metric properties and iteration oracle", 30)
def test_c9_metric_and_oracle():
    rng = random.Random(20261015)
    for _ in range(1000):
        A, B, C = (FiniteSet([_random_dyadic(rng) for _ in range(rng.randint(1, 6))])
                   for _ in range(3))
        dab, dba = hausdorff(A, B), hausdorff(B, A)
        assert dab == dba == brute_hausdorff(A.points, B.points)
        assert hausdorff(A, C) <= dab + hausdorff(B, C)
        assert hausdorff(A, A) == 0
    third = "pwl: [(0,0),(1/2,1),(1,0)]; const: 0; pwl: [(0,0),(1,1/2)]"
    systems = [
        (example1(), [lambda v: Fr(0), tent]),
        (example3(), [tent, lambda v: 1 - tent(v)]),
        (parse_system(third), [tent, lambda v: Fr(0), lambda v: v / 2]),
    ]
    for _ in range(100):
        x = _random_dyadic(rng, bits=rng.randint(1, 10))
        for F, maps in systems:
            for n, A in enumerate(orbit(F, x, 6)):
                assert set(A.points) == enumerate_images(maps, x, n)


@criterion("C10", "example3 conservation", 10)
def test_c10_conservation():
    F = example3()
    rng = random.Random(3)
    for _ in range(100):
        x = _random_dyadic(rng, bits=rng.randint(1, 24))
        for A in orbit(F, x, 30)[1:]:
            pts = set(A.points)
            assert all(1 - t in pts for t in pts)


if __name__ == "__main__":
    # conftest prints the criterion lines in the terminal summary
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
