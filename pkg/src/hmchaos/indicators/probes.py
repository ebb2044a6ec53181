"""Grid searches for witnesses of the set-valued chaos notions.

Every search walks its grid in ascending order and stops at the first
witness, so a report is a deterministic function of its inputs.  All
positive answers are finite-horizon evidence, never proofs.
"""
from bisect import bisect_left, bisect_right
from fractions import Fraction

from ..errors import AdmissibilityError, ParameterError
from ..metric_core import INTERVAL, FiniteSet, OpenRegion, hausdorff, parse_number, region_contains_set
from ..multimap import orbit_gaps, range_sample, step
from .profile import default_window
from .report import ChaosReport

DEFAULT_GRID_STEP = Fraction(1, 2 ** 10)
MAX_RANGE_DEPTH = 6


def _positive(name, value):
    if value is None or value <= 0:
        raise ParameterError(f"{name} must be positive, got {value}")


def _horizon(value):
    if int(value) < 1:
        raise ParameterError(f"horizon must be >= 1, got {value}")
    return int(value)


def _grid_step(value):
    s = parse_number(value) if value is not None else DEFAULT_GRID_STEP
    if not 0 < s <= 1:
        raise ParameterError(f"grid step must lie in (0,1], got {value}")
    return s


def _interval_only(F):
    if F.space != INTERVAL:
        raise ParameterError("grid probes are only defined for systems on the interval")


def _params(F, **extra):
    out = {"system": F.name or "custom", "power": F.power,
           "mode": "exact" if F.exact else "float"}
    out.update(extra)
    return out


class Orbits:
    """Lazily extended orbits F^0(x), F^1(x), ... of grid points.

    Once F^n(x) = F^{n-1}(x) the orbit is frozen: every later image set is
    the same, since the next set depends only on the current one.
    """

    def __init__(self, F):
        self.F = F
        self._sets = {}
        self._frozen = {}

    def _extend(self, x, n):
        seq = self._sets.get(x)
        if seq is None:
            seq = self._sets[x] = [FiniteSet([x], self.F.tol)]
        while len(seq) <= n and x not in self._frozen:
            nxt = step(self.F, seq[-1])
            if nxt == seq[-1]:
                self._frozen[x] = len(seq) - 1
                break
            seq.append(nxt)
        return seq

    def at(self, x, n):
        seq = self._extend(x, n)
        return seq[min(n, len(seq) - 1)]

    def frozen_by(self, points, n):
        """True if every orbit is already frozen at or before time n."""
        return all(self._frozen.get(x, n + 1) <= n for x in points)


def _grid(region, step_size, F):
    pts = region.grid(step_size, F.exact)
    if not pts:
        raise ParameterError(f"region {region.to_text()} contains no grid point at step {step_size}")
    return pts


# -- sensitivity and accessibility -----------------------------------------

def _separated_pair(sets, delta):
    lows = [A.min for A in sets]
    highs = [A.max for A in sets]
    if max(highs) - min(lows) <= delta:
        return None  # the hull bounds every pairwise gap
    for i in range(len(sets)):
        A = sets[i]
        for j in range(i + 1, len(sets)):
            B = sets[j]
            if abs(A.min - B.min) > delta or abs(A.max - B.max) > delta:
                return i, j, hausdorff(A, B)
            gap = hausdorff(A, B)
            if gap > delta:
                return i, j, gap
    return None


def _sensitivity_in(orbits, U, delta, horizon, step_size):
    pts = _grid(U, step_size, orbits.F)
    for n in range(1, horizon + 1):
        hit = _separated_pair([orbits.at(x, n) for x in pts], delta)
        if hit:
            i, j, gap = hit
            return {"U": U, "x": pts[i], "y": pts[j], "n": n, "gap": gap}
        if orbits.frozen_by(pts, n):
            return None
    return None


def sensitivity_probe(F, delta, opens, horizon, grid_step=None, _orbits=None):
    """Search each open set for x, y and n <= horizon with d_H(F^n x, F^n y) > delta."""
    _interval_only(F)
    _positive("delta", delta)
    horizon = _horizon(horizon)
    step_size = _grid_step(grid_step)
    orbits = _orbits or Orbits(F)
    witnesses, missing = [], []
    for U in opens:
        w = _sensitivity_in(orbits, U, delta, horizon, step_size)
        if w is None:
            missing.append(U)
        else:
            witnesses.append(w)
    return ChaosReport(
        "sensitivity", not missing and bool(opens), witnesses,
        _params(F, delta=delta, grid_step=step_size, opens=list(opens), unresolved=missing),
        horizon)


def _close_pair(A_sets, B_sets, eps):
    order = sorted(range(len(B_sets)), key=lambda j: (B_sets[j].min, j))
    mins = [B_sets[j].min for j in order]
    for i, A in enumerate(A_sets):
        lo = bisect_right(mins, A.min - eps)
        hi = bisect_left(mins, A.min + eps)
        best = None
        for k in range(lo, hi):
            j = order[k]
            B = B_sets[j]
            if abs(A.max - B.max) >= eps or (best is not None and j > best[0]):
                continue
            gap = hausdorff(A, B)
            if gap < eps:
                best = (j, gap)
        if best:
            return i, best[0], best[1]
    return None


def _accessible(orbits, U, V, eps, horizon, step_size):
    xs = _grid(U, step_size, orbits.F)
    ys = _grid(V, step_size, orbits.F)
    for n in range(1, horizon + 1):
        hit = _close_pair([orbits.at(x, n) for x in xs], [orbits.at(y, n) for y in ys], eps)
        if hit:
            i, j, gap = hit
            return {"U": U, "V": V, "x": xs[i], "y": ys[j], "n": n, "gap": gap}
        if orbits.frozen_by(xs, n) and orbits.frozen_by(ys, n):
            return None
    return None


def accessibility_probe(F, eps, U, V, horizon, grid_step=None, _orbits=None):
    """Search for x in U, y in V and n <= horizon with d_H(F^n x, F^n y) < eps."""
    _interval_only(F)
    _positive("eps", eps)
    horizon = _horizon(horizon)
    step_size = _grid_step(grid_step)
    w = _accessible(_orbits or Orbits(F), U, V, eps, horizon, step_size)
    return ChaosReport("accessibility", w is not None, [w] if w else [],
                       _params(F, eps=eps, grid_step=step_size, U=U, V=V), horizon)


def dyadic_opens(level=4):
    """The open intervals (j/2^level, (j+1)/2^level)."""
    width = Fraction(1, 2 ** level)
    return [OpenRegion.open_interval(j * width, (j + 1) * width) for j in range(2 ** level)]


def kato_report(F, delta, eps, opens=None, horizon=64, powers=(1,), grid_step=None):
    """Sensitivity plus accessibility for F^k, k in ``powers``.

    ``horizon`` counts steps of F^k.  ``found`` is true when every power
    is flagged; ``params['agreement']`` records whether all powers agree.
    """
    _interval_only(F)
    _positive("delta", delta)
    _positive("eps", eps)
    horizon = _horizon(horizon)
    opens = list(opens) if opens is not None else dyadic_opens()
    if not opens:
        raise ParameterError("need at least one open set")
    powers = [int(k) for k in powers]
    if not powers or min(powers) < 1:
        raise ParameterError("powers must be >= 1")
    step_size = _grid_step(grid_step)
    per_power = []
    for k in powers:
        Fk = F.with_power(k)
        orbits = Orbits(Fk)
        sens = sensitivity_probe(Fk, delta, opens, horizon, step_size, _orbits=orbits)
        acc_witnesses, acc_missing = [], []
        for a in range(len(opens)):
            for b in range(a, len(opens)):
                w = _accessible(orbits, opens[a], opens[b], eps, horizon, step_size)
                if w is None:
                    acc_missing.append([opens[a], opens[b]])
                else:
                    acc_witnesses.append(w)
        accessible = not acc_missing
        per_power.append({
            "power": k,
            "sensitive": sens.found,
            "accessible": accessible,
            "kato": sens.found and accessible,
            "sensitivity_witnesses": sens.witnesses,
            "accessibility_witnesses": acc_witnesses,
            "accessibility_unresolved": acc_missing,
        })
    flags = [p["kato"] for p in per_power]
    return ChaosReport(
        "kato", all(flags), per_power,
        _params(F, delta=delta, eps=eps, grid_step=step_size, powers=powers,
                opens=opens, agreement=len(set(flags)) == 1),
        horizon)


# -- transitivity and mixing -------------------------------------------------

def admissible_range(F, grid_step=None):
    """Sampled R_a(F): the first stabilized depth <= MAX_RANGE_DEPTH (or the last tried)."""
    step_size = max(_grid_step(grid_step), Fraction(1, 256))
    sample = None
    for depth in range(1, MAX_RANGE_DEPTH + 1):
        sample = range_sample(F, depth, step_size)
        if sample.stabilized:
            break
    return sample


def check_admissible(F, V, grid_step=None, sample=None):
    sample = sample or admissible_range(F, grid_step)
    if not sample.admits(V):
        raise AdmissibilityError(
            f"no sampled range element (depth {sample.depth}, grid {sample.grid_step}) "
            f"lies inside {V.to_text()}")
    return sample


def _hit(orbits, pts, V, n):
    for x in pts:
        if region_contains_set(orbits.at(x, n), V):
            return x
    return None


def transitivity_probe(F, U, V, horizon, min_time=0, grid_step=None, _orbits=None):
    """Smallest n in (min_time, horizon] with F^n(x) inside V for a grid x in U."""
    _interval_only(F)
    horizon = _horizon(horizon)
    if min_time < 0:
        raise ParameterError("min_time must be >= 0")
    step_size = _grid_step(grid_step)
    sample = check_admissible(F, V, step_size)
    orbits = _orbits or Orbits(F)
    pts = _grid(U, step_size, F)
    witnesses = []
    for n in range(min_time + 1, horizon + 1):
        x = _hit(orbits, pts, V, n)
        if x is not None:
            witnesses.append({"x": x, "n": n, "image": orbits.at(x, n)})
            break
    return ChaosReport(
        "transitive", bool(witnesses), witnesses,
        _params(F, U=U, V=V, min_time=min_time, grid_step=step_size,
                range_depth=sample.depth, range_stabilized=sample.stabilized),
        horizon)


def mixing_probe(F, U, V, start, window, grid_step=None):
    """Smallest N <= start such that every n in [N, N + window] has a hit."""
    _interval_only(F)
    if start < 1 or window < 1:
        raise ParameterError("start and window must be >= 1")
    step_size = _grid_step(grid_step)
    sample = check_admissible(F, V, step_size)
    orbits = Orbits(F)
    pts = _grid(U, step_size, F)
    last = start + window
    hits = {n: _hit(orbits, pts, V, n) for n in range(1, last + 1)}
    N = next((N for N in range(1, start + 1)
              if all(hits[n] is not None for n in range(N, N + window + 1))), None)
    witnesses = []
    if N is not None:
        witnesses.append({"N": N, "window": window,
                          "hits": [[n, hits[n]] for n in range(N, N + window + 1)]})
    return ChaosReport(
        "mixing", N is not None, witnesses,
        _params(F, U=U, V=V, start=start, window=window, grid_step=step_size,
                range_depth=sample.depth, range_stabilized=sample.stabilized),
        last)


def weak_mixing_probe(F, pairs, horizon, grid_step=None):
    """A shared n <= horizon at which every (U_i, V_i) pair has a hit."""
    _interval_only(F)
    horizon = _horizon(horizon)
    step_size = _grid_step(grid_step)
    sample = admissible_range(F, step_size)
    for _, V in pairs:
        check_admissible(F, V, step_size, sample)
    orbits = Orbits(F)
    grids = [_grid(U, step_size, F) for U, _ in pairs]
    witnesses = []
    for n in range(1, horizon + 1):
        xs = [_hit(orbits, pts, V, n) for pts, (_, V) in zip(grids, pairs)]
        if all(x is not None for x in xs):
            witnesses.append({"n": n, "points": xs})
            break
    return ChaosReport(
        "weak-mixing", bool(witnesses), witnesses,
        _params(F, pairs=[list(p) for p in pairs], grid_step=step_size,
                range_stabilized=sample.stabilized),
        horizon)


# -- pairwise and frequency indicators ---------------------------------------

def li_yorke_scan(F, pairs, horizon, delta, eps, window=None):
    """Flag proximal (late gap < eps) and delta-separated (late gap > delta) pairs."""
    _positive("delta", delta)
    _positive("eps", eps)
    horizon = _horizon(horizon)
    window = default_window(horizon) if window is None else int(window)
    if not 1 <= window <= horizon:
        raise ParameterError("need horizon >= window >= 1")
    witnesses = []
    for x, y in pairs:
        late = orbit_gaps(F, x, y, horizon)[horizon - window:]
        lo, hi = min(late), max(late)
        witnesses.append({
            "x": F.point(x), "y": F.point(y),
            "proximal": lo < eps, "separated": hi > delta,
            "late_min": lo, "late_max": hi,
            "min_at": horizon - window + late.index(lo),
            "max_at": horizon - window + late.index(hi),
        })
    found = any(w["proximal"] and w["separated"] for w in witnesses)
    return ChaosReport("li-yorke", found, witnesses,
                       _params(F, delta=delta, eps=eps, window=window), horizon)


def visit_frequencies(F, V, y, horizon):
    """Running frequency of i < n with F^i(y) meeting V, for n = 1..horizon."""
    A = FiniteSet([F.point(y)], F.tol)
    count, out = 0, []
    for i in range(horizon):
        if any(V.contains(p) for p in A.points):
            count += 1
        out.append(Fraction(count, i + 1))
        if i + 1 < horizon:
            A = step(F, A)
    return out


def snw_frequency(F, V, witnesses, horizon, threshold=0, window=None, checkpoints=()):
    """Upper visit frequency of F^i(y) into V, read off a tail window."""
    horizon = _horizon(horizon)
    window = default_window(horizon) if window is None else int(window)
    if not 1 <= window <= horizon:
        raise ParameterError("need horizon >= window >= 1")
    out = []
    for y in witnesses:
        freqs = visit_frequencies(F, V, y, horizon)
        tail = max(freqs[horizon - window:])
        out.append({
            "y": F.point(y), "frequency": freqs[-1], "tail_max": tail,
            "checkpoints": [[c, freqs[c - 1]] for c in checkpoints if 1 <= c <= horizon],
        })
    found = any(w["tail_max"] > threshold for w in out)
    return ChaosReport("snw", found, out,
                       _params(F, V=V, threshold=threshold, window=window), horizon)
