"""The shift-plus-constant system on the orbit closure of u.

F = {sigma, f0} with f0 identically a = 000...  For i >= 1 every image set
is F^i(x) = {sigma^i(x), a}, which the fast paths below exploit; the
generic set-valued iteration is kept as the cross-check.
"""
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .. import kernels
from ..errors import ParameterError, ResourceError
from ..metric_core import _bits_value, A_POINT, B_POINT, U_POINT, OpenRegion, SymbolPoint
from ..multimap import ConstantSequence, MultiMap, Shift
from ..indicators.report import ChaosReport
from .words import as_word, default_words, word_text

# symbols compared per shift position in the vectorized gap computation
GAP_DEPTH = 60
SNW_BLOCKS = ("10111", "01", "10", "1011100000101111111110111")


def example4_system():
    return MultiMap((Shift("sigma"), ConstantSequence(A_POINT, "f0")), name="example4")


def in_subshift(point, length=125, window=None, words=None):
    """Bounded membership test for the orbit closure of u.

    The first ``length`` symbols of the point must occur in u at a start
    index below ``window`` (default 5 * length).  A pass is evidence, not
    proof, since membership depends on the whole sequence.
    """
    words = words or default_words()
    window = window or 5 * length
    head = word_text(point.symbols(length))
    text = words.u_slice(0, min(window + length, words.budget) - 1)
    return text.find(head) != -1


# -- H-family -----------------------------------------------------------------

def e_block(k, choice, words=None):
    """E_k = I A (choice 1) or O A I A (choice 2), with A = A_{2^k}."""
    words = words or default_words()
    A = words.word(2 ** k)
    size = len(A)
    ones = np.ones(size, dtype=np.uint8)
    zeros = np.zeros(size, dtype=np.uint8)
    if choice == 1:
        return np.concatenate([ones, A])
    if choice == 2:
        return np.concatenate([zeros, A, ones, A])
    raise ParameterError(f"choices are 1 or 2, got {choice!r}")


def _choices(choices):
    out = tuple(int(c) for c in (choices if not isinstance(choices, str) else list(choices)))
    if any(c not in (1, 2) for c in out):
        raise ParameterError("choice words are over the alphabet {1,2}")
    return out


@dataclass(frozen=True)
class HFamilyPoint:
    """x = E_1 E_2 ... E_K followed by a constant tail.

    The tail is 1* when the next (unmaterialized) block would be chosen as
    1 and 0* otherwise, so the sequence is exact for another 5**(2**(K+1))
    symbols.
    """

    choices: tuple
    prefix: np.ndarray
    ends: tuple
    point: SymbolPoint

    @property
    def K(self):
        return len(self.choices)

    def s(self, k):
        """s_k = E_1 ... E_k."""
        return self.prefix[:self.ends[k - 1]] if k else self.prefix[:0]

    def choice_text(self):
        return "".join(str(c) for c in self.choices)


def h_family_point(choices, K=None, next_choice=1, words=None):
    words = words or default_words()
    choices = _choices(choices)
    K = len(choices) if K is None else K
    if len(choices) != K or K < 1:
        raise ParameterError(f"need exactly K={K} choices, got {len(choices)}")
    if 2 ** K + 1 > words.budget_exponent:
        raise ResourceError(
            f"K={K} needs A_{2 ** K + 1}, over the budget 5**{words.budget_exponent}")
    blocks = [e_block(k, c, words) for k, c in enumerate(choices, start=1)]
    ends = tuple(int(v) for v in np.cumsum([len(b) for b in blocks]))
    prefix = np.concatenate(blocks)
    for k in range(1, K + 1):
        # s_k must be the tail of A_{2^k + 1}
        if not np.array_equal(prefix[:ends[k - 1]], words.suffix_of_word(2 ** k + 1, ends[k - 1])):
            raise AssertionError(f"s_{k} is not a suffix of A_{2 ** k + 1}")
    prefix.setflags(write=False)
    tail = "1*" if next_choice == 1 else "0*"
    return HFamilyPoint(choices, prefix, ends, SymbolPoint(prefix, tail))


# -- E-family (Sturmian words) -------------------------------------------------

def _alphas(count):
    # alpha = (sqrt(d) + b) / c, irrational, in (0, 1)
    out = [(5, -1, 2), (2, -1, 1)]
    d = 3
    while len(out) < count:
        r = math.isqrt(d)
        if r * r != d and (d, -r, 1) not in out and d != 8:
            out.append((d, -r, 1))
        d += 1
    return out[:count]


def _floor_multiple(n, d, b, c):
    # floor(n * (sqrt(d) + b) / c), exact via integer square roots
    return (math.isqrt(d * n * n) + b * n) // c


def sturmian_word(alpha, length):
    d, b, c = alpha
    fl = [_floor_multiple(n, d, b, c) for n in range(length + 1)]
    return "".join(str(fl[n + 1] - fl[n]) for n in range(length))


def e_family(count, length):
    """``count`` Sturmian prefixes of the given length, pairwise distinct slopes."""
    if count < 2:
        raise ParameterError("an E-family needs at least two members")
    if length < 1:
        raise ParameterError("length must be positive")
    return [sturmian_word(a, length) for a in _alphas(count)]


def agreement_counts(s, t):
    same = sum(a == b for a, b in zip(s, t))
    return same, min(len(s), len(t)) - same


# -- block frequencies ---------------------------------------------------------

def frequency_table(block="10111", ks=range(1, 10), words=None):
    """Rows (k, count, freq, bound) for occurrences of ``block`` in A_k.

    ``bound`` is the one-step contraction bound (3/5) freq_{k-1} +
    4(|B|-1)/5^k carried from the previous row (None on the first row).
    """
    words = words or default_words()
    B = as_word(block)
    rows, prev = [], None
    for k in ks:
        count = words.block_count_recursive(k, B)
        freq = Fraction(count, 5 ** k)
        bound = None if prev is None else Fraction(3, 5) * prev + Fraction(4 * (len(B) - 1), 5 ** k)
        rows.append({"k": k, "count": count, "freq": freq, "bound": bound})
        prev = freq
    return rows


def aggregated_bound(k, m):
    """The (4/5)^(k-m) envelope; only informative when it is below 1."""
    return Fraction(4, 5) ** (k - m)


# -- verification --------------------------------------------------------------

def u_visit_frequency(block, n, words=None):
    """Fraction of i < n with sigma^i(u) in the cylinder [block] (block not all zero)."""
    words = words or default_words()
    B = as_word(block)
    if not B.any():
        raise ParameterError("all-zero blocks also catch the f0 branch; use snw_frequency")
    text = words.slice_array(0, n + len(B) - 2)
    return Fraction(int(kernels.block_count(text, B)), n)


def _rho_bounds(p, q, depth):
    # rho(p, q) lies in [lo, hi]; exact once depth passes both prefixes
    span = max(len(p.prefix), len(q.prefix)) + 1
    lo = _bits_value((p.symbols(min(depth, span)) != q.symbols(min(depth, span))).astype(np.uint8))
    if depth >= span:
        extra = Fraction(2, 2 ** span) if p.tail != q.tail else Fraction(0)
        return lo + extra, lo + extra
    return lo, lo + Fraction(2, 2 ** depth)


def _gap_below(x, y, i, t):
    """Decide d_H(F^i x, F^i y) < t exactly, doubling the depth until settled."""
    xi, yi = x.shift(i), y.shift(i)
    depth = 2 * GAP_DEPTH
    while True:
        lxy, hxy = _rho_bounds(xi, yi, depth)
        if i == 0:
            lo, hi = lxy, hxy
        else:
            lxa, hxa = _rho_bounds(xi, A_POINT, depth)
            lya, hya = _rho_bounds(yi, A_POINT, depth)
            lo, hi = min(lxy, max(lxa, lya)), min(hxy, max(hxa, hya))
        if hi < t:
            return True
        if lo >= t:
            return False
        if lo == hi:
            return lo < t
        depth *= 2


def gap_numerators(x, y, count):
    """Integers g_i with d_H(F^i x, F^i y) in [g_i, g_i + 1] / 2^(L-1), i < count."""
    L = GAP_DEPTH
    xs = np.ascontiguousarray(x.symbols(count + L - 1))
    ys = np.ascontiguousarray(y.symbols(count + L - 1))
    zs = np.zeros_like(xs)
    dxy = kernels.shift_distance_numerators(xs, ys, count, L)
    dxa = kernels.shift_distance_numerators(xs, zs, count, L)
    dya = kernels.shift_distance_numerators(ys, zs, count, L)
    out = np.minimum(dxy, np.maximum(dxa, dya))
    out[0] = dxy[0]  # F^0 is {x} versus {y}
    return out


def symbolic_phi(x, y, n, t):
    """phi^n(t) for the example4 system, exact.

    Integer bounds settle almost every index; those whose bracket straddles
    t are recomputed with rationals.
    """
    t = Fraction(t)
    if t <= 0:
        return Fraction(0)
    g = gap_numerators(x, y, n)
    c = math.ceil(t * 2 ** (GAP_DEPTH - 1))
    sure = int(np.count_nonzero(g <= c - 2))
    unsure = np.flatnonzero(g == c - 1)
    extra = sum(_gap_below(x, y, int(i), t) for i in unsure)
    return Fraction(sure + extra, n)


def checkpoints(hx, hy):
    """(k, p_k, q_k) for k = 2..K with p_k = max |s_{k-1}| and q_k = 5^(2^k)."""
    out = []
    for k in range(2, min(hx.K, hy.K) + 1):
        p = max(hx.ends[k - 2], hy.ends[k - 2])
        out.append((k, p, 5 ** (2 ** k)))
    return out


def _dc_part(hx, hy, words):
    x, y = hx.point, hy.point
    rows = []
    for k, p, q in checkpoints(hx, hy):
        if q > words.budget:
            raise ResourceError(f"checkpoint q_{k} = 5**{2 ** k} exceeds the budget")
        if hx.choices[:k] == hy.choices[:k]:
            kind, t = "agree", Fraction(1, 2)
            phi = symbolic_phi(x, y, q, t)
            bound = 1 - Fraction(p, q)
            holds = phi >= bound
        elif hx.choices[k - 1] != hy.choices[k - 1]:
            kind, t = "disagree", Fraction(1)
            phi = symbolic_phi(x, y, q, t)
            bound = Fraction(p, q)
            holds = phi <= bound
        else:
            continue
        rows.append({"k": k, "p": p, "q": q, "type": kind, "t": t,
                     "phi": phi, "bound": bound, "holds": holds})
    return rows


def _snw_part(horizon, words, blocks):
    marks = [5 ** e for e in range(1, 20) if 5 ** e <= horizon and 5 ** e >= 5 ** 5]
    if not marks or marks[-1] != horizon:
        marks.append(horizon)
    decays = []
    for block in blocks:
        freqs = [u_visit_frequency(block, n, words) for n in marks]
        decays.append({
            "block": block, "y": U_POINT, "checkpoints": [[n, f] for n, f in zip(marks, freqs)],
            "decreasing": all(b < a for a, b in zip(freqs, freqs[1:])),
        })
    # neighbourhood [0^5] of a along u: every F^i(u), i >= 1, contains a
    first = 1 if word_text(words.slice_array(0, 4)) == "00000" else 0
    freq_a = Fraction(horizon - 1 + first, horizon)
    # neighbourhood [1^5] of b along b: F^i(b) = {b, a} always meets it
    held = [
        {"point": A_POINT, "cylinder": "00000", "y": U_POINT, "frequency": freq_a},
        {"point": B_POINT, "cylinder": "11111", "y": B_POINT, "frequency": Fraction(1)},
    ]
    return decays, held


def verify_example4(K=3, horizon=5 ** 7, choices=None, blocks=SNW_BLOCKS,
                    threshold=Fraction(1, 5), words=None):
    """Both halves of the example: SNW frequencies and the H-family DC pair.

    ``choices`` defaults to ("1"*K, "1"*(K-1) + "2"): the words agree up
    to level K-1 and differ at level K.
    """
    words = words or default_words()
    if K < 2:
        raise ParameterError("K must be >= 2 to have a checkpoint")
    if horizon < 1:
        raise ParameterError("horizon must be >= 1")
    if 5 ** (2 ** K) > words.budget:
        raise ResourceError(f"q_{K} = 5**{2 ** K} exceeds the budget 5**{words.budget_exponent}")
    cx, cy = choices or ("1" * K, "1" * (K - 1) + "2")
    hx = h_family_point(cx, K, words=words)
    hy = h_family_point(cy, K, words=words)
    decays, held = _snw_part(horizon, words, blocks)
    dc = _dc_part(hx, hy, words)
    snw_ok = (all(d["decreasing"] for d in decays)
              and decays[0]["checkpoints"][-1][1] < threshold
              and all(h["frequency"] >= Fraction(1, 2) for h in held))
    dc_ok = (any(r["holds"] for r in dc if r["type"] == "agree")
             and any(r["holds"] for r in dc if r["type"] == "disagree")
             and all(r["holds"] for r in dc))
    witnesses = [
        {"part": "snw", "decay": decays, "held": held, "ok": snw_ok},
        {"part": "dc", "x": hx.choice_text(), "y": hy.choice_text(), "checkpoints": dc, "ok": dc_ok},
    ]
    params = {"system": "example4", "K": K, "horizon": horizon, "threshold": threshold,
              "gap_depth": GAP_DEPTH, "subshift_check": "bounded window"}
    return ChaosReport("dc", snw_ok and dc_ok, witnesses, params, horizon)


def snw_region(block):
    return OpenRegion(cylinders=[block])
