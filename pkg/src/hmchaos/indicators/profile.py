"""Empirical distribution functions of Hausdorff orbit gaps.

phi^n(t) is the fraction of i < n with d_H(F^i(x), F^i(y)) < t.  The
liminf/limsup over n are replaced by the min/max of phi^k(t) for k in the
last ``window`` steps of the horizon.
"""
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..errors import ParameterError
from ..metric_core import FiniteSet, hausdorff
from ..multimap import orbit_gaps, step


def default_window(horizon):
    return min(horizon, max(horizon // 10, 10))


@dataclass(frozen=True)
class TimeSequence:
    """Strictly increasing positive times p_1 < p_2 < ..."""

    times: tuple

    def __post_init__(self):
        times = tuple(int(t) for t in self.times)
        if not times:
            raise ParameterError("a time sequence needs at least one entry")
        if times[0] < 1 or any(b <= a for a, b in zip(times, times[1:])):
            raise ParameterError("times must be positive and strictly increasing")
        object.__setattr__(self, "times", times)

    def __len__(self):
        return len(self.times)

    def __iter__(self):
        return iter(self.times)

    def __getitem__(self, i):
        return self.times[i]


@dataclass(frozen=True)
class DistributionalProfile:
    horizon: int
    t_grid: tuple
    window: int
    gaps: tuple
    counts: np.ndarray      # counts[k-1, j] = #{i < k : gap_i < t_j}
    phi: tuple              # phi^horizon(t_j)
    lower: tuple            # min over the tail window
    upper: tuple            # max over the tail window

    def phi_at(self, k, t):
        """phi^k(t) for a grid value t (0 for t < 0 by convention)."""
        if t < 0:
            return Fraction(0)
        return Fraction(int(self.counts[k - 1, self.t_grid.index(t)]), k)

    def rows(self):
        """(k, t, phi^k(t)) for every k <= horizon and grid t."""
        for k in range(1, self.horizon + 1):
            for j, t in enumerate(self.t_grid):
                yield k, t, Fraction(int(self.counts[k - 1, j]), k)


def _check_grid(t_grid):
    grid = tuple(t_grid)
    if not grid:
        raise ParameterError("t_grid must be nonempty")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ParameterError("t_grid must be strictly ascending")
    return grid


def profile_from_gaps(gaps, t_grid, window=None):
    grid = _check_grid(t_grid)
    horizon = len(gaps)
    if horizon < 1:
        raise ParameterError("horizon must be >= 1")
    window = default_window(horizon) if window is None else window
    if not 1 <= window <= horizon:
        raise ParameterError("need horizon >= window >= 1")
    hits = np.array([[t > 0 and g < t for t in grid] for g in gaps], dtype=np.int64)
    counts = np.cumsum(hits, axis=0)
    phi, lower, upper = [], [], []
    ks = range(max(horizon - window, 1), horizon + 1)
    for j in range(len(grid)):
        vals = [Fraction(int(counts[k - 1, j]), k) for k in ks]
        phi.append(Fraction(int(counts[-1, j]), horizon))
        lower.append(min(vals))
        upper.append(max(vals))
    return DistributionalProfile(horizon, grid, window, tuple(gaps), counts,
                                 tuple(phi), tuple(lower), tuple(upper))


def distributional_profile(F, x, y, horizon, t_grid, window=None):
    """Finite-horizon phi^n(F, t) for the pair (x, y)."""
    _check_grid(t_grid)
    if window is not None and not 1 <= window <= horizon:
        raise ParameterError("need horizon >= window >= 1")
    return profile_from_gaps(orbit_gaps(F, x, y, horizon), t_grid, window)


def gaps_along(F, x, y, times):
    """d_H(F^p(x), F^p(y)) for each p in ``times`` (ascending)."""
    A = FiniteSet([F.point(x)], F.tol)
    B = FiniteSet([F.point(y)], F.tol)
    now, out = 0, []
    for p in times:
        while now < p:
            A, B = step(F, A), step(F, B)
            now += 1
        out.append(hausdorff(A, B))
    return out


def distributional_profile_seq(F, x, y, p, t_grid, window=None):
    """As :func:`distributional_profile`, counting only over the times p_i."""
    p = p if isinstance(p, TimeSequence) else TimeSequence(tuple(p))
    _check_grid(t_grid)
    return profile_from_gaps(gaps_along(F, x, y, p.times), t_grid, window)
