"""Points, finite compact sets, the Hausdorff metric and open regions.

Two ground spaces are supported:

* the unit interval, with points held either as exact rationals
  (``fractions.Fraction``; dyadic for every built-in system) or as floats;
* one-sided binary sequences, held as :class:`SymbolPoint`, with metric
  ``rho(a, b) = sum_i [a_i != b_i] / 2**i``.
"""
import math
from functools import cmp_to_key
from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ParameterError, ResourceError

INTERVAL = "interval"
SYMBOL = "symbol"
TAILS = ("0*", "1*", "u")
DEFAULT_SYMBOL_TOL = Fraction(1, 2 ** 40)
_KEY_LEN = 64


# -- numbers ---------------------------------------------------------------

def parse_number(text, exact=True):
    """Parse ``3/8``, ``3/2^3``, ``0.375`` or ``1``."""
    if isinstance(text, (int, Fraction)) and not isinstance(text, bool):
        return Fraction(text) if exact else float(text)
    if isinstance(text, float):
        return Fraction(text) if exact else text
    s = str(text).strip().replace(" ", "")
    try:
        if "/" in s:
            num, den = s.split("/", 1)
            if "^" in den:
                base, exp = den.split("^", 1)
                den_val = int(base) ** int(exp)
            else:
                den_val = int(den)
            value = Fraction(int(num), den_val)
        else:
            value = Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParameterError(f"cannot parse number {text!r}") from exc
    return value if exact else float(value)


def format_number(value):
    """Canonical text: ``p/q`` for rationals (q = 2**e for dyadics), repr for floats."""
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, int):
        return f"{value}/1"
    return repr(float(value))


def is_dyadic(value):
    d = Fraction(value).denominator
    return d & (d - 1) == 0


def coerce_interval_point(value, exact=True):
    v = parse_number(value, exact) if not isinstance(value, (Fraction, float)) else value
    if exact and isinstance(v, float):
        v = Fraction(v)
    elif not exact and isinstance(v, Fraction):
        v = float(v)
    if not 0 <= v <= 1:
        raise ParameterError(f"point {value!r} lies outside [0,1]")
    return v


# -- symbol points ---------------------------------------------------------

def _u_symbols(start, count):
    from .symbolic.words import default_words

    if count <= 0:
        return np.zeros(0, dtype=np.uint8)
    return default_words().slice_array(start, start + count - 1)


def _as_bits(prefix):
    from .symbolic.words import as_word

    arr = as_word(prefix)
    if arr.flags.writeable:
        arr = arr.copy()
        arr.setflags(write=False)
    return arr


class SymbolPoint:
    """A one-sided 0/1 sequence: a finite prefix followed by a tail rule.

    The tail is ``0*`` (all zeros), ``1*`` (all ones) or ``u`` (the
    sequence u read from index ``offset``).  Instances are normalized so
    that equal sequences have identical (prefix, tail, offset).
    """

    __slots__ = ("prefix", "tail", "offset", "_hash")

    def __init__(self, prefix=(), tail="0*", offset=0):
        if tail not in TAILS:
            raise ParameterError(f"tail must be one of {TAILS}, got {tail!r}")
        if offset < 0 or (offset and tail != "u"):
            raise ParameterError("offset only applies to the u tail and must be >= 0")
        bits = _as_bits(prefix)
        if tail == "u":
            # absorb trailing prefix symbols that u itself would supply
            cut = len(bits)
            while cut and offset and bits[cut - 1] == _u_symbols(offset - 1, 1)[0]:
                cut -= 1
                offset -= 1
        else:
            c = 0 if tail == "0*" else 1
            other = np.flatnonzero(bits != c)
            cut = int(other[-1]) + 1 if other.size else 0
        self.prefix = bits[:cut]
        self.tail = tail
        self.offset = offset
        self._hash = None

    @classmethod
    def _raw(cls, prefix, tail, offset):
        obj = cls.__new__(cls)
        obj.prefix, obj.tail, obj.offset, obj._hash = prefix, tail, offset, None
        return obj

    @property
    def alignment(self):
        # index of u aligned with position 0 of this sequence (u tail only)
        return self.offset - len(self.prefix)

    def shift(self, k=1):
        """sigma**k of this sequence (normal form is preserved)."""
        n = len(self.prefix)
        if k <= n:
            return SymbolPoint._raw(self.prefix[k:], self.tail, self.offset)
        extra = k - n
        return SymbolPoint._raw(self.prefix[n:], self.tail,
                                self.offset + extra if self.tail == "u" else 0)

    def symbols(self, count):
        """First ``count`` symbols as a uint8 array."""
        n = len(self.prefix)
        if count <= n:
            return self.prefix[:count]
        rest = count - n
        if self.tail == "u":
            tail = _u_symbols(self.offset, rest)
        else:
            tail = np.full(rest, 0 if self.tail == "0*" else 1, dtype=np.uint8)
        return np.concatenate([self.prefix, tail])

    def __getitem__(self, i):
        return int(self.symbols(i + 1)[i])


    def __eq__(self, other):
        if not isinstance(other, SymbolPoint):
            return NotImplemented
        if (self.tail, self.offset, len(self.prefix)) != (other.tail, other.offset, len(other.prefix)):
            return False
        a, b = self.prefix, other.prefix
        if a.__array_interface__["data"][0] == b.__array_interface__["data"][0]:
            return True
        return bool(np.array_equal(a, b))

    def __hash__(self):
        if self._hash is None:
            p = self.prefix
            self._hash = hash((self.tail, self.offset, len(p),
                               p[:_KEY_LEN].tobytes(), p[-_KEY_LEN:].tobytes()))
        return self._hash

    def to_text(self):
        from .symbolic.words import word_text

        tail = self.tail if not self.offset else f"u@{self.offset}"
        return f"{word_text(self.prefix)}~{tail}"

    @classmethod
    def from_text(cls, text):
        """Parse ``prefix~tail`` with tail in ``0*``, ``1*``, ``u`` or ``u@k``."""
        if "~" not in text:
            raise ParameterError(f"symbol point {text!r} needs the form prefix~tail")
        prefix, tail = text.strip().split("~", 1)
        offset = 0
        if tail.startswith("u@"):
            tail, offset = "u", int(tail[2:])
        return cls(prefix, tail, offset)

    def __repr__(self):
        text = self.to_text()
        return f"SymbolPoint({text[:40] + '...' if len(text) > 40 else text})"


def symbol_order(p, q):
    """Lexicographic comparison of two sequences (-1, 0 or 1).

    Reads doubling windows so long shared prefixes are only scanned once
    they matter; gives up at 2**24 symbols and falls back to the tail rule.
    """
    if p == q:
        return 0
    n = _KEY_LEN
    while n <= 2 ** 24:
        try:
            a, b = p.symbols(n), q.symbols(n)
        except ResourceError:
            break
        diff = np.flatnonzero(a != b)
        if diff.size:
            i = diff[0]
            return -1 if a[i] < b[i] else 1
        n *= 2
    ka, kb = (p.tail, p.offset, len(p.prefix)), (q.tail, q.offset, len(q.prefix))
    return -1 if ka < kb else 1


A_POINT = SymbolPoint((), "0*")
B_POINT = SymbolPoint((), "1*")
U_POINT = SymbolPoint((), "u")


def space_of(point):
    if isinstance(point, SymbolPoint):
        return SYMBOL
    if isinstance(point, (Fraction, float, int)) and not isinstance(point, bool):
        return INTERVAL
    raise TypeError(f"not a point: {point!r}")


def depth_for_tolerance(tol):
    """Smallest L whose truncation bound 2**-(L-2) is below ``tol``."""
    tol = Fraction(tol)
    if tol <= 0:
        raise ParameterError("tolerance must be positive")
    depth = 2
    while Fraction(1, 2 ** (depth - 2)) >= tol:
        depth += 1
    return depth


def _bits_value(diff):
    # sum_i diff[i] / 2**i as an exact Fraction
    if not diff.size:
        return Fraction(0)
    num = int.from_bytes(np.packbits(diff).tobytes(), "big")
    pad = (-len(diff)) % 8
    num >>= pad
    return Fraction(num, 2 ** (len(diff) - 1))


def symbol_distance(p, q, tol=DEFAULT_SYMBOL_TOL):
    """rho(p, q), exact when the tails line up, else truncated.

    When both tails are constant, or both read u at the same alignment,
    and the prefixes are no longer than the truncation depth L, the value
    is exact.  Otherwise it is the partial sum over indices < L, which
    undershoots by at most 2**-(L-2) < ``tol``.
    """
    depth = depth_for_tolerance(tol)
    span = max(len(p.prefix), len(q.prefix))
    if p.tail != "u" and q.tail != "u":
        tail_differs = p.tail != q.tail
        comparable = True
    else:
        comparable = p.tail == q.tail == "u" and p.alignment == q.alignment
        tail_differs = False
    if comparable and span <= depth:
        diff = (p.symbols(span) != q.symbols(span)).astype(np.uint8)
        value = _bits_value(diff)
        if tail_differs:
            value += Fraction(2, 2 ** span)
        return value
    diff = (p.symbols(depth) != q.symbols(depth)).astype(np.uint8)
    return _bits_value(diff)


def point_dist(p, q, tol=DEFAULT_SYMBOL_TOL):
    """|p - q| on the interval, rho on sequences."""
    sp, sq = space_of(p), space_of(q)
    if sp != sq:
        raise TypeError(f"cannot measure between a {sp} point and a {sq} point")
    if sp == INTERVAL:
        return abs(p - q)
    return symbol_distance(p, q, tol)


# -- finite sets -----------------------------------------------------------

class FiniteSet:
    """A nonempty finite point set in canonical form.

    Interval points are sorted ascending and thinned so that consecutive
    kept points are more than ``tol`` apart; sequences are deduplicated by
    equality (or by ``rho <= tol``) and ordered by their leading symbols.
    """

    __slots__ = ("points", "tol", "space", "_hash")

    def __init__(self, points, tol=0):
        pts = list(points)
        if not pts:
            raise ParameterError("a FiniteSet must be nonempty")
        space = space_of(pts[0])
        for p in pts:
            if space_of(p) != space:
                raise TypeError("all points of a FiniteSet must share one space")
        if tol < 0:
            raise ParameterError("dedup tolerance must be nonnegative")
        if space == INTERVAL:
            for p in pts:
                if not 0 <= p <= 1:
                    raise ParameterError(f"point {p!r} lies outside [0,1]")
            pts.sort()
            kept = [pts[0]]
            for p in pts[1:]:
                if p - kept[-1] > tol:
                    kept.append(p)
        else:
            kept = []
            for p in pts:
                if tol:
                    if all(symbol_distance(p, k) > tol for k in kept):
                        kept.append(p)
                elif p not in kept:
                    kept.append(p)
            kept.sort(key=cmp_to_key(symbol_order))
        self.points = tuple(kept)
        self.tol = tol
        self.space = space
        self._hash = None

    @classmethod
    def singleton(cls, point, tol=0):
        return cls([point], tol)

    def __iter__(self):
        return iter(self.points)

    def __len__(self):
        return len(self.points)

    def __getitem__(self, i):
        return self.points[i]

    def __eq__(self, other):
        if not isinstance(other, FiniteSet):
            return NotImplemented
        return self.space == other.space and self.points == other.points

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.space, self.points))
        return self._hash

    def union(self, other):
        return FiniteSet(self.points + other.points, max(self.tol, other.tol))

    @property
    def min(self):
        return self.points[0]

    @property
    def max(self):
        return self.points[-1]

    def to_text(self):
        if self.space == INTERVAL:
            return "{" + ", ".join(format_number(p) for p in self.points) + "}"
        return "{" + ", ".join(p.to_text() for p in self.points) + "}"

    @classmethod
    def from_text(cls, text, exact=True, tol=0):
        body = text.strip()
        if not (body.startswith("{") and body.endswith("}")):
            raise ParameterError(f"set {text!r} must be written {{p, q, ...}}")
        items = [s for s in body[1:-1].split(",") if s.strip()]
        if not items:
            raise ParameterError("a FiniteSet must be nonempty")
        if "~" in items[0]:
            return cls([SymbolPoint.from_text(s) for s in items], tol)
        return cls([coerce_interval_point(s, exact) for s in items], tol)

    def __repr__(self):
        return f"FiniteSet({self.to_text()})"


def _check_same_space(A, B):
    if A.space != B.space:
        raise TypeError(f"cannot compare a {A.space} set with a {B.space} set")


def dist_asym_witness(A, B, tol=DEFAULT_SYMBOL_TOL):
    """(sup_a inf_b d(a, b), index of a, index of its nearest b).

    Ties go to the lowest canonical index.
    """
    _check_same_space(A, B)
    best, where = None, (0, 0)
    if A.space == INTERVAL:
        bpts = B.points
        for i, a in enumerate(A.points):
            k = bisect_left(bpts, a)
            cands = [j for j in (k - 1, k) if 0 <= j < len(bpts)]
            j = min(cands, key=lambda j: (abs(a - bpts[j]), j))
            near = abs(a - bpts[j])
            if best is None or near > best:
                best, where = near, (i, j)
    else:
        for i, a in enumerate(A.points):
            dists = [symbol_distance(a, b, tol) for b in B.points]
            near = min(dists)
            if best is None or near > best:
                best, where = near, (i, dists.index(near))
    return best, where[0], where[1]


def dist_asym(A, B, tol=DEFAULT_SYMBOL_TOL):
    return dist_asym_witness(A, B, tol)[0]


def hausdorff(A, B, tol=DEFAULT_SYMBOL_TOL):
    """max(dist(A, B), dist(B, A))."""
    if A.space == INTERVAL and B.space == INTERVAL and len(A) <= 4 and len(B) <= 4:
        # inlined for the tiny sets the probes produce
        best = abs(A.points[0] - B.points[0])
        for a in A.points:
            near = min(abs(a - b) for b in B.points)
            if near > best:
                best = near
        for b in B.points:
            near = min(abs(a - b) for a in A.points)
            if near > best:
                best = near
        return best
    return max(dist_asym(A, B, tol), dist_asym(B, A, tol))


# -- open regions ----------------------------------------------------------

@dataclass(frozen=True)
class Interval:
    lo: object
    hi: object
    closed_lo: bool = False
    closed_hi: bool = False

    def __post_init__(self):
        if not 0 <= self.lo <= self.hi <= 1:
            raise ParameterError(f"interval endpoints ({self.lo}, {self.hi}) must satisfy 0 <= lo <= hi <= 1")
        if self.closed_lo and self.lo != 0:
            raise ParameterError("only the endpoint 0 may be closed on the left")
        if self.closed_hi and self.hi != 1:
            raise ParameterError("only the endpoint 1 may be closed on the right")
        if self.lo == self.hi and not (self.closed_lo and self.closed_hi):
            raise ParameterError(f"interval ({self.lo}, {self.hi}) is empty")

    def __contains__(self, x):
        above = x >= self.lo if self.closed_lo else x > self.lo
        below = x <= self.hi if self.closed_hi else x < self.hi
        return above and below

    def to_text(self):
        return "%s%s,%s%s" % ("[" if self.closed_lo else "(", format_number(self.lo),
                              format_number(self.hi), "]" if self.closed_hi else ")")


def _merge(components):
    comps = sorted(components, key=lambda c: (c.lo, not c.closed_lo))
    out = []
    for c in comps:
        if out:
            last = out[-1]
            touching = c.lo < last.hi or (c.lo == last.hi and (last.closed_hi or c.closed_lo))
            if touching:
                if c.hi > last.hi or (c.hi == last.hi and c.closed_hi):
                    out[-1] = Interval(last.lo, c.hi, last.closed_lo, c.closed_hi)
                continue
        out.append(c)
    return tuple(out)


class OpenRegion:
    """A finite union of open intervals of [0,1] or of cylinder sets."""

    __slots__ = ("space", "intervals", "cylinders", "_cyl_bytes")

    def __init__(self, intervals=(), cylinders=None):
        if cylinders is not None:
            if intervals:
                raise ParameterError("a region lives in one space")
            words = sorted({str(w) for w in cylinders}, key=lambda w: (len(w), w))
            for w in words:
                if set(w) - {"0", "1"}:
                    raise ParameterError(f"cylinder word {w!r} is not over {{0,1}}")
            kept = []
            for w in words:
                if not any(w.startswith(k) for k in kept):
                    kept.append(w)
            if not kept:
                raise ParameterError("empty region")
            self.space, self.intervals, self.cylinders = SYMBOL, (), tuple(sorted(kept))
            self._cyl_bytes = tuple(bytes(int(ch) for ch in w) for w in self.cylinders)
        else:
            comps = _merge(intervals)
            if not comps:
                raise ParameterError("empty region")
            self.space, self.intervals, self.cylinders = INTERVAL, comps, ()
            self._cyl_bytes = ()

    @classmethod
    def whole(cls, space=INTERVAL):
        if space == SYMBOL:
            return cls(cylinders=[""])
        return cls([Interval(Fraction(0), Fraction(1), True, True)])

    @classmethod
    def open_interval(cls, lo, hi):
        return cls([Interval(lo, hi)])

    def contains(self, point):
        if space_of(point) != self.space:
            raise TypeError(f"{space_of(point)} point tested against a {self.space} region")
        if self.space == INTERVAL:
            return any(point in c for c in self.intervals)
        longest = max(len(w) for w in self._cyl_bytes)
        head = point.symbols(longest).tobytes()
        return any(head.startswith(w) for w in self._cyl_bytes)

    __contains__ = contains

    def grid(self, step, exact=True):
        """Closed uniform grid points k*step of [0,1] lying in the region."""
        if self.space != INTERVAL:
            raise ParameterError("grids are only defined on the interval")
        step = Fraction(step)
        if not 0 < step <= 1 or (1 / step).denominator != 1:
            raise ParameterError(f"grid step {step} must divide 1")
        count = int(1 / step)
        ks = set()
        for c in self.intervals:
            lo_k = math.ceil(c.lo / step)
            hi_k = math.floor(c.hi / step)
            for k in range(lo_k, hi_k + 1):
                if k * step in c:
                    ks.add(k)
        pts = [k * step for k in sorted(ks) if 0 <= k <= count]
        return pts if exact else [float(p) for p in pts]

    def to_text(self):
        if self.space == INTERVAL:
            return "|".join(c.to_text() for c in self.intervals)
        return "|".join(f"[{w}]" for w in self.cylinders)

    @classmethod
    def from_text(cls, text, exact=True):
        parts = [s.strip() for s in text.split("|") if s.strip()]
        if not parts:
            raise ParameterError("empty region text")
        if all(p.startswith("[") and p.endswith("]") and "," not in p for p in parts):
            return cls(cylinders=[p[1:-1] for p in parts])
        comps = []
        for p in parts:
            if len(p) < 5 or p[0] not in "([" or p[-1] not in ")]" or "," not in p:
                raise ParameterError(f"cannot parse region component {p!r}")
            lo, hi = p[1:-1].split(",", 1)
            comps.append(Interval(parse_number(lo, exact), parse_number(hi, exact),
                                  p[0] == "[", p[-1] == "]"))
        return cls(comps)

    def __eq__(self, other):
        return isinstance(other, OpenRegion) and self.to_text() == other.to_text()

    def __hash__(self):
        return hash(self.to_text())

    def __repr__(self):
        return f"OpenRegion({self.to_text()})"


def region_contains_set(A, V):
    """A subset of V, i.e. A in e(V)."""
    if A.space != V.space:
        raise TypeError(f"{A.space} set tested against a {V.space} region")
    return all(V.contains(p) for p in A.points)


def ball_region(A, eps):
    """An open region containing every point within ``eps`` of A.

    On the interval this is exactly B(A, eps).  On sequences it is the
    union of cylinders of depth ceil(log2(1/eps)) + 2 around each point,
    which lies inside B(A, eps).
    """
    if eps <= 0:
        raise ParameterError(f"radius must be positive, got {eps}")
    if A.space == INTERVAL:
        comps = []
        for a in A.points:
            lo, hi = a - eps, a + eps
            comps.append(Interval(max(lo, 0 * a), min(hi, 0 * a + 1), lo < 0, hi > 1))
        return OpenRegion(comps)
    inv = 1 / Fraction(eps)
    depth = 2
    while 2 ** (depth - 2) < inv:
        depth += 1
    from .symbolic.words import word_text

    return OpenRegion(cylinders=[word_text(p.symbols(depth)) for p in A.points])
