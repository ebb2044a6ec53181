"""Constructive distributionally-chaotic families via nested refinement.

For every choice word C over {1,2} of length K we want a point x_C and
shared times p_1 < ... < p_K with F^{p_k}(x_C) inside the 1/k-ball around
A_{C_k}.  The search keeps, per choice prefix, the grid points that have
survived every level so far and extends all prefixes at once by the first
time index that serves every (prefix, target) combination.
"""
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from ..errors import ParameterError, SearchExhausted
from ..metric_core import FiniteSet, OpenRegion, ball_region, hausdorff, region_contains_set
from ..multimap import iterate, orbit_gaps
from .probes import Orbits, _grid_step, _interval_only, admissible_range, _params
from .profile import TimeSequence
from .report import ChaosReport

DEFAULT_START_STEP = Fraction(1, 2 ** 8)


@dataclass
class DCFamily:
    """Shared times plus one point per choice word."""

    A1: FiniteSet
    A2: FiniteSet
    times: TimeSequence
    members: list
    grid_step: object
    refinements: int
    params: dict = field(default_factory=dict)

    @property
    def depth(self):
        return len(self.times)

    def target(self, letter):
        return self.A1 if letter == "1" else self.A2

    def point(self, word):
        return dict(self.members)[word]

    def verify(self, F):
        """Replay every containment F^{p_k}(x_C) in ball(A_{C_k}, 1/k) by direct iteration."""
        failures = []
        for word, x in self.members:
            for k, (letter, p) in enumerate(zip(word, self.times), start=1):
                ball = ball_region(self.target(letter), Fraction(1, k))
                if not region_contains_set(iterate(F, x, p), ball):
                    failures.append((word, k))
        return failures

    def to_report(self, F):
        witnesses = [{"times": list(self.times)}]
        witnesses += [{"choice": w, "x": x} for w, x in self.members]
        params = _params(F, A1=self.A1, A2=self.A2, depth=self.depth,
                         grid_step=self.grid_step, refinements=self.refinements)
        params.update(self.params)
        return ChaosReport("dc-seq", True, witnesses, params, self.times[-1])


def _close(A, target, k):
    return hausdorff(A, target) < Fraction(1, k)


def _check_targets(F, A1, A2, check_range):
    if A1 == A2:
        raise ParameterError("the two target sets must differ")
    if not check_range:
        return
    sample = admissible_range(F)
    for name, A in (("A1", A1), ("A2", A2)):
        if not any(hausdorff(A, R) <= F.tol for R in sample.sets):
            raise ParameterError(f"{name} = {A.to_text()} matches no sampled range element")


def _search(F, orbits, pts, targets, depth, horizon):
    survivors = {"": list(pts)}
    times = []
    for k in range(1, depth + 1):
        start = times[-1] + 1 if times else 1
        chosen = None
        stuck = None
        for n in range(start, horizon + 1):
            nxt = {}
            for prefix, xs in survivors.items():
                for letter, A in targets:
                    keep = [x for x in xs if _close(orbits.at(x, n), A, k)]
                    if not keep:
                        stuck = prefix + letter
                        break
                    nxt[prefix + letter] = keep
                else:
                    continue
                break
            else:
                chosen = (n, nxt)
                break
            alive = [x for xs in survivors.values() for x in xs]
            if orbits.frozen_by(alive, n):
                break  # every later image equals this one, so nothing changes
        if chosen is None:
            return None, (k, stuck or "")
        times.append(chosen[0])
        survivors = chosen[1]
    return (times, survivors), None


def _representatives(survivors, depth):
    used, members = set(), []
    for letters in product("12", repeat=depth):
        word = "".join(letters)
        pick = next((x for x in survivors[word] if x not in used), None)
        if pick is None:
            return None, word
        used.add(pick)
        members.append((word, pick))
    return members, None


def synthesize_dc_pair(F, A1, A2, depth, U0=None, grid_step=None, horizon=64,
                       max_refinements=8, check_range=True):
    """Times p_1 < ... < p_depth and one grid point per choice word.

    The grid inside U0 starts at ``grid_step`` (default 2**-8) and is
    halved after each failed attempt, at most ``max_refinements`` times.
    Raises SearchExhausted naming the level and choice word that failed.
    """
    _interval_only(F)
    if depth < 1:
        raise ParameterError("depth must be >= 1")
    if horizon < depth:
        raise ParameterError("horizon must be at least the depth")
    A1 = A1 if isinstance(A1, FiniteSet) else FiniteSet([F.point(a) for a in A1], F.tol)
    A2 = A2 if isinstance(A2, FiniteSet) else FiniteSet([F.point(a) for a in A2], F.tol)
    _check_targets(F, A1, A2, check_range)
    U0 = U0 or OpenRegion.whole()
    step_size = _grid_step(grid_step if grid_step is not None else DEFAULT_START_STEP)
    targets = (("1", A1), ("2", A2))
    orbits = Orbits(F)
    failure = None
    for refinement in range(max_refinements + 1):
        pts = U0.grid(step_size, F.exact)
        if pts:
            found, failure = _search(F, orbits, pts, targets, depth, horizon)
            if found:
                times, survivors = found
                members, missing = _representatives(survivors, depth)
                if members:
                    return DCFamily(A1, A2, TimeSequence(times), members, step_size, refinement,
                                    {"U0": U0, "horizon": horizon})
                failure = (depth, missing)
        step_size = step_size / 2
    level, word = failure or (1, "")
    raise SearchExhausted(
        f"no time index up to {horizon} serves level {level} for choice word {word!r} "
        f"after {max_refinements} grid refinements", level, word)


# -- verification of the counting bounds ------------------------------------

def _block_type(cx, cy, lo, hi):
    pairs = [(cx[k - 1], cy[k - 1]) for k in range(lo, hi + 1)]
    if all(a == b for a, b in pairs):
        return "agree"
    if all(a != b for a, b in pairs):
        return "disagree"
    return None


def _gap_block_type(gaps, lo, hi, t_small, eps_sep):
    block = gaps[lo - 1:hi]
    if all(g < t_small for g in block):
        return "agree"
    if all(g >= eps_sep for g in block):
        return "disagree"
    return None


def sequence_gaps(F, x, y, times):
    """d_H(F^{p_k} x, F^{p_k} y) for the given times."""
    gaps = orbit_gaps(F, x, y, max(times) + 1)
    return [gaps[p] for p in times]


def verify_dc_seq(F, pair, p, t_small, eps_sep, choices=None):
    """Factorial-block counting bounds along p.

    Checkpoint c covers k <= c!; its last block is ((c-1)!, c!].  On an
    agreement block at least a fraction 1 - 1/c of all k <= c! must have
    gap < t_small; on a disagreement block at least 1 - 1/c must have gap
    >= eps_sep.  Block types come from the choice words when given, else
    from the gaps themselves.
    """
    if t_small <= 0 or eps_sep <= 0:
        raise ParameterError("t_small and eps_sep must be positive")
    times = list(p.times if isinstance(p, TimeSequence) else TimeSequence(p).times)
    x, y = pair
    gaps = sequence_gaps(F, x, y, times)
    if choices is not None:
        cx, cy = choices
        if min(len(cx), len(cy)) < len(times):
            raise ParameterError("choice words are shorter than the time sequence")
    checks = []
    c = 2
    while math.factorial(c) <= len(times):
        lo, hi = math.factorial(c - 1) + 1, math.factorial(c)
        if choices is not None:
            kind = _block_type(cx, cy, lo, hi)
        else:
            kind = _gap_block_type(gaps, lo, hi, t_small, eps_sep)
        head = gaps[:hi]
        bound = 1 - Fraction(1, c)
        entry = {"checkpoint": c, "n": hi, "block": [lo, hi], "type": kind, "bound": bound}
        if kind == "agree":
            entry["fraction"] = Fraction(sum(g < t_small for g in head), hi)
        elif kind == "disagree":
            entry["fraction"] = Fraction(sum(g >= eps_sep for g in head), hi)
        if kind:
            entry["holds"] = entry["fraction"] >= bound
        checks.append(entry)
        c += 1
    agree = any(e.get("holds") for e in checks if e["type"] == "agree")
    disagree = any(e.get("holds") for e in checks if e["type"] == "disagree")
    return ChaosReport(
        "dc-seq", agree and disagree, checks,
        _params(F, x=F.point(x), y=F.point(y), times=times, t_small=t_small, eps_sep=eps_sep,
                choices=list(choices) if choices else None,
                agreement_bound=agree, disagreement_bound=disagree),
        times[-1])
