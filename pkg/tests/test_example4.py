from fractions import Fraction as Fr

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hmchaos.errors import ParameterError, ResourceError
from hmchaos.indicators.probes import snw_frequency
from hmchaos.metric_core import A_POINT, B_POINT, U_POINT, FiniteSet, OpenRegion, SymbolPoint
from hmchaos.multimap import iterate, orbit_gaps
from hmchaos.symbolic.example4 import (
    aggregated_bound, checkpoints, e_family, example4_system, frequency_table, gap_numerators,
    h_family_point, in_subshift, symbolic_phi, u_visit_frequency, verify_example4,
)
from hmchaos.symbolic.words import WordSystem, build_word, default_words, word_text

from oracles import naive_count

W = default_words()
F = example4_system()


class TestSystem:
    def test_images(self):
        assert iterate(F, B_POINT, 1) == FiniteSet([B_POINT, A_POINT])
        assert iterate(F, A_POINT, 1) == FiniteSet([A_POINT])
        assert iterate(F, U_POINT, 2) == FiniteSet([U_POINT.shift(2), A_POINT])

    def test_subshift_membership(self):
        assert in_subshift(A_POINT) and in_subshift(B_POINT) and in_subshift(U_POINT)
        assert in_subshift(U_POINT.shift(17))
        assert not in_subshift(SymbolPoint("1" * 6 + "0" + "1" * 6 + "0" * 7 + "1", "0*"), length=25)

    def test_maps_preserve_membership(self):
        for x in (U_POINT.shift(3), h_family_point("12").point):
            for A in (iterate(F, x, 1), iterate(F, x, 4)):
                assert all(in_subshift(p) for p in A.points)


class TestHFamily:
    def test_lengths(self):
        assert len(h_family_point("1").prefix) == 50
        h = h_family_point("2")
        assert len(h.prefix) == 100
        assert word_text(h.prefix) == build_word(3)[-100:]
        assert h_family_point("12").ends == (50, 50 + 4 * 625)

    def test_blocks(self):
        h = h_family_point("1")
        assert word_text(h.prefix) == "1" * 25 + build_word(2)

    @pytest.mark.parametrize("choices", ["1", "2", "11", "12", "21", "22", "112", "221"])
    def test_tail_property(self, choices):
        h = h_family_point(choices)
        for k in range(1, h.K + 1):
            s = word_text(h.s(k))
            assert s == word_text(W.suffix_of_word(2 ** k + 1, len(s)))

    def test_errors(self):
        with pytest.raises(ParameterError):
            h_family_point("13")
        with pytest.raises(ParameterError):
            h_family_point("12", K=3)
        with pytest.raises(ResourceError):
            h_family_point("1111")

    def test_checkpoints(self):
        hx, hy = h_family_point("111"), h_family_point("112")
        assert checkpoints(hx, hy) == [(2, 50, 625), (3, 1300, 5 ** 8)]


class TestEFamily:
    def test_self_agreement(self):
        s = e_family(2, 200)[0]
        assert sum(a == b for a, b in zip(s, s)) == 200

    def test_pair_agrees_and_disagrees(self):
        s, t = e_family(2, 10 ** 4)
        same = sum(a == b for a, b in zip(s, t))
        assert same > 1000 and 10 ** 4 - same > 1000

    def test_golden_word(self):
        # slope (sqrt5 - 1)/2: floor differences, computed independently in floats
        import math

        alpha = (math.sqrt(5) - 1) / 2
        ref = "".join(str(math.floor((n + 1) * alpha) - math.floor(n * alpha)) for n in range(300))
        assert e_family(2, 300)[0] == ref

    def test_distinct_members(self):
        fam = e_family(6, 64)
        assert len(set(fam)) == 6
        assert all(len(w) == 64 for w in fam)

    def test_degenerate(self):
        assert all(len(w) == 1 for w in e_family(2, 1))
        with pytest.raises(ParameterError):
            e_family(1, 10)


class TestFrequencies:
    def test_table_matches_scan(self):
        for row in frequency_table("10111", range(1, 8)):
            assert row["count"] == naive_count(build_word(row["k"]), "10111")

    def test_contraction(self):
        rows = frequency_table("10111", range(1, 11))
        for prev, row in zip(rows, rows[1:]):
            assert row["count"] <= 3 * prev["count"] + 16
            assert row["freq"] <= row["bound"]

    @pytest.mark.parametrize("block", ["10111", "01110", "10100", "11100"])
    def test_contraction_other_blocks(self, block):
        rows = frequency_table(block, range(2, 10))
        for prev, row in zip(rows, rows[1:]):
            assert row["count"] <= 3 * prev["count"] + 4 * (len(block) - 1)

    def test_aggregated_bound_only_informative_late(self):
        assert aggregated_bound(5, 10) > 1
        assert aggregated_bound(12, 10) < 1

    def test_visit_frequency_matches_generic(self):
        n = 625
        fast = u_visit_frequency("10111", n)
        report = snw_frequency(F, OpenRegion(cylinders=["10111"]), [U_POINT], n)
        assert report.witnesses[0]["frequency"] == fast

    def test_zero_block_rejected(self):
        with pytest.raises(ParameterError):
            u_visit_frequency("000", 10)


class TestGaps:
    @pytest.mark.parametrize("pair", [("111", "112"), ("12", "21"), ("2", "1"), ("22", "22")])
    def test_fast_gaps_bracket_generic(self, pair):
        x, y = (h_family_point(c).point for c in pair)
        n = 120
        generic = orbit_gaps(F, x, y, n)
        g = gap_numerators(x, y, n)
        scale = Fr(1, 2 ** 59)
        for i in range(n):
            assert g[i] * scale <= generic[i] + Fr(1, 2 ** 38)
            assert generic[i] <= (int(g[i]) + 1) * scale + Fr(1, 2 ** 38)

    @given(st.sampled_from(["1/8", "1/4", "1/2", "1", "3/2"]))
    def test_phi_matches_generic(self, t):
        x, y = h_family_point("12").point, h_family_point("21").point
        n = 200
        generic = orbit_gaps(F, x, y, n)
        t = Fr(t)
        # generic distances are truncated below 2^-38; none sit that close to t here
        assert symbolic_phi(x, y, n, t) == Fr(sum(g < t for g in generic), n)

    def test_phi_negative_threshold(self):
        x = h_family_point("1").point
        assert symbolic_phi(x, x, 50, -1) == 0
        assert symbolic_phi(x, x, 50, Fr(1, 1024)) == 1


class TestVerify:
    def test_default_passes(self):
        report = verify_example4()
        assert report.found
        snw, dc = report.witnesses
        assert snw["ok"] and dc["ok"]
        assert [r["type"] for r in dc["checkpoints"]] == ["agree", "disagree"]

    def test_budget(self):
        with pytest.raises(ResourceError):
            verify_example4(K=4)
        with pytest.raises(ResourceError):
            verify_example4(K=3, words=WordSystem(8))

    def test_small_k(self):
        with pytest.raises(ParameterError):
            verify_example4(K=1)
