"""Multiple mappings F = (f_1, ..., f_m) iterated as set-valued maps.

F^n(x) is the set of all length-n compositions applied to x.  It is
computed by repeatedly applying :func:`step` to {x}: the image set at time
n depends only on the image set at time n-1, so the m**n blow-up of the
composition tree never materializes.
"""
import math
from bisect import bisect_right
from dataclasses import dataclass, field, replace
from fractions import Fraction

from .errors import ParameterError
from .metric_core import (
    INTERVAL, SYMBOL, FiniteSet, OpenRegion, SymbolPoint, coerce_interval_point,
    format_number, hausdorff, parse_number, region_contains_set,
)

FLOAT_TOL = 2.0 ** -40


class Endomorphism:
    """A continuous self-map of one ground space."""

    space = INTERVAL
    lipschitz = 1

    def __init__(self, name):
        self.name = name

    def __call__(self, x):
        raise NotImplementedError

    def describe(self):
        raise NotImplementedError

    def __repr__(self):
        return f"{type(self).__name__}({self.describe()})"


class PiecewiseLinear(Endomorphism):
    """Linear interpolation through breakpoints (x_i, y_i), x_0 = 0 < ... < x_k = 1."""

    def __init__(self, breakpoints, name="pwl"):
        super().__init__(name)
        pts = [(Fraction(x), Fraction(y)) for x, y in breakpoints]
        if len(pts) < 2:
            raise ParameterError("a piecewise-linear map needs at least two breakpoints")
        xs = [p[0] for p in pts]
        if xs[0] != 0 or xs[-1] != 1:
            raise ParameterError("breakpoints must start at x=0 and end at x=1")
        if any(b <= a for a, b in zip(xs, xs[1:])):
            raise ParameterError("breakpoint abscissae must be strictly increasing")
        if any(not 0 <= y <= 1 for _, y in pts):
            raise ParameterError("breakpoint values must lie in [0,1]")
        self.breakpoints = tuple(pts)
        self._xs = xs
        self._slopes = [(y1 - y0) / (x1 - x0) for (x0, y0), (x1, y1) in zip(pts, pts[1:])]
        self._fxs = [float(x) for x in xs]
        self._fys = [float(y) for _, y in pts]
        self._fslopes = [float(s) for s in self._slopes]
        self.lipschitz = max(abs(s) for s in self._slopes)

    def __call__(self, x):
        if isinstance(x, float):
            i = min(max(bisect_right(self._fxs, x) - 1, 0), len(self._fslopes) - 1)
            y = self._fys[i] + self._fslopes[i] * (x - self._fxs[i])
            return min(max(y, 0.0), 1.0)
        i = min(max(bisect_right(self._xs, x) - 1, 0), len(self._slopes) - 1)
        return self.breakpoints[i][1] + self._slopes[i] * (x - self._xs[i])

    def describe(self):
        inner = ",".join(f"({format_number(x)},{format_number(y)})" for x, y in self.breakpoints)
        return f"pwl: [{inner}]"


class Constant(Endomorphism):
    lipschitz = 0

    def __init__(self, value, name=None):
        value = Fraction(value)
        if not 0 <= value <= 1:
            raise ParameterError("constant value must lie in [0,1]")
        super().__init__(name or f"const {format_number(value)}")
        self.value = value
        self._fvalue = float(value)

    def __call__(self, x):
        return self._fvalue if isinstance(x, float) else self.value

    def describe(self):
        return f"const: {format_number(self.value)}"


class Shift(Endomorphism):
    """The left shift sigma on one-sided sequences."""

    space = SYMBOL
    lipschitz = 2

    def __init__(self, name="shift"):
        super().__init__(name)

    def __call__(self, x):
        return x.shift(1)

    def describe(self):
        return "shift"


class ConstantSequence(Endomorphism):
    """The constant map onto a fixed sequence (e.g. f_0 = a = 000...)."""

    space = SYMBOL
    lipschitz = 0

    def __init__(self, point, name=None):
        if isinstance(point, str):
            point = SymbolPoint.from_text(point if "~" in point else "~" + point)
        super().__init__(name or f"const-seq {point.to_text()}")
        self.point = point

    def __call__(self, x):
        return self.point

    def describe(self):
        text = self.point.to_text()
        return "const-seq: " + (text[1:] if text.startswith("~") else text)


@dataclass(frozen=True)
class MultiMap:
    """An ordered tuple of endomorphisms over one space.

    ``power`` k makes every step apply F k times, i.e. the object is F^k.
    ``tol`` is the dedup tolerance used for image sets (0 in exact mode,
    2**-40 in float mode unless given).
    """

    maps: tuple
    exact: bool = True
    tol: object = None
    power: int = 1
    name: str = ""
    space: str = field(init=False)

    def __post_init__(self):
        maps = tuple(self.maps)
        if not maps:
            raise ParameterError("a multiple mapping needs at least one map")
        spaces = {f.space for f in maps}
        if len(spaces) != 1:
            raise ParameterError("all maps must share one ground space")
        if self.power < 1:
            raise ParameterError("power must be >= 1")
        object.__setattr__(self, "maps", maps)
        object.__setattr__(self, "space", spaces.pop())
        if self.tol is None:
            object.__setattr__(self, "tol", Fraction(0) if self.exact else FLOAT_TOL)

    @property
    def m(self):
        return len(self.maps)

    @property
    def lipschitz(self):
        return max(max(f.lipschitz for f in self.maps), 1) ** self.power

    def with_power(self, k):
        """F^k as a multimap (time rescaled by k)."""
        return replace(self, power=self.power * k)

    def as_float(self):
        return replace(self, exact=False, tol=FLOAT_TOL)

    def point(self, value):
        """Coerce user input into a point of this system's space and mode."""
        if self.space == SYMBOL:
            if isinstance(value, SymbolPoint):
                return value
            return SymbolPoint.from_text(str(value))
        return coerce_interval_point(value, self.exact)

    def describe(self):
        return [f.describe() for f in self.maps]


def _base_step(F, points):
    return FiniteSet([f(a) for a in points for f in F.maps], F.tol)


def step(F, A):
    """F(A) = union of f_i(a) over maps and points (applied ``power`` times)."""
    out = A
    for _ in range(F.power):
        out = _base_step(F, out.points)
    return out


def iterate(F, x, n):
    """F^n(x); F^0(x) = {x}."""
    if n < 0:
        raise ParameterError("n must be nonnegative")
    A = FiniteSet([F.point(x)], F.tol)
    for _ in range(n):
        A = step(F, A)
    return A


def orbit(F, x, n):
    """[F^0(x), ..., F^n(x)]."""
    A = FiniteSet([F.point(x)], F.tol)
    out = [A]
    for _ in range(n):
        A = step(F, A)
        out.append(A)
    return out


def orbit_gaps(F, x, y, n, tol=None):
    """d_H(F^i(x), F^i(y)) for i = 0..n-1, carrying both sets forward."""
    if n < 1:
        raise ParameterError("horizon must be positive")
    kw = {} if tol is None else {"tol": tol}
    A = FiniteSet([F.point(x)], F.tol)
    B = FiniteSet([F.point(y)], F.tol)
    gaps = []
    for i in range(n):
        gaps.append(hausdorff(A, B, **kw))
        if i + 1 < n:
            A, B = step(F, A), step(F, B)
    return gaps


def grid_points(step_size, exact=True):
    """Closed uniform grid {0, s, 2s, ..., 1}."""
    return OpenRegion.whole().grid(step_size, exact)


def _sample(F, depth, step_size):
    seen = {}
    for x in grid_points(step_size, F.exact):
        A = iterate(F, x, depth)
        seen.setdefault(A, None)
    return list(seen)


def _dedup_collection(sets, tol):
    if not tol:
        return list(dict.fromkeys(sets))
    kept = []
    for A in sets:
        if all(hausdorff(A, K) > tol for K in kept):
            kept.append(A)
    return kept


def _matched(left, right, tol):
    if not tol:
        return set(left) == set(right)
    return (all(any(hausdorff(A, B) <= tol for B in right) for A in left)
            and all(any(hausdorff(A, B) <= tol for A in left) for B in right))


@dataclass(frozen=True)
class RangeSample:
    depth: int
    grid_step: object
    sets: tuple
    stabilized: bool
    refined_step: object
    caveat: str = "grid-sampled surrogate for R(F^N) = R(F^(N+1)); not a proof"

    def __len__(self):
        return len(self.sets)

    def admits(self, V):
        """Some sampled range element lies inside V."""
        return any(region_contains_set(A, V) for A in self.sets)


def range_sample(F, N, grid_step):
    """Sample R(F^N) on a closed grid and test stabilization against depth N+1.

    One more application of F stretches the grid by up to the Lipschitz
    constant L, so depth N+1 is sampled on the grid refined by
    2**ceil(log2 L); both collections are then compared up to d_H <= tol.
    """
    if F.space != INTERVAL:
        raise ParameterError("range sampling is only defined on the interval")
    if N < 1:
        raise ParameterError("depth must be positive")
    grid_step = parse_number(grid_step)
    sets = _dedup_collection(_sample(F, N, grid_step), F.tol)
    lip = max(F.lipschitz, 1)
    factor = 2 ** max(math.ceil(math.log2(lip)), 0) if lip > 1 else 1
    refined = grid_step / factor
    nxt = _dedup_collection(_sample(F, N + 1, refined), F.tol)
    return RangeSample(N, grid_step, tuple(sets), _matched(sets, nxt, F.tol), refined)


def preimage_hits(F, n, V, grid_step):
    """Grid points x with F^n(x) inside V, ascending."""
    if n < 1:
        raise ParameterError("n must be positive")
    return [x for x in grid_points(parse_number(grid_step), F.exact)
            if region_contains_set(iterate(F, x, n), V)]
