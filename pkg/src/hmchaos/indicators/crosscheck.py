"""Consistency checks tying the probes together.

Each check returns a plain dict with an ``ok`` flag plus the evidence, so
tests and the CLI can show why a check failed.
"""
from fractions import Fraction

from .probes import dyadic_opens, kato_report, mixing_probe, transitivity_probe

SUITE_TARGETS = ("[0,1/8)|(1/2,5/8)", "[0,1/4)")


def later_hit(F, U, V, horizon, grid_step=None):
    """A transitivity hit at n implies another at some n' > n within 2*horizon."""
    first = transitivity_probe(F, U, V, horizon, grid_step=grid_step)
    if not first.found:
        return {"ok": True, "vacuous": True, "first": None, "second": None}
    n = first.witnesses[0]["n"]
    second = transitivity_probe(F, U, V, 2 * horizon, min_time=n, grid_step=grid_step)
    m = second.witnesses[0]["n"] if second.found else None
    return {"ok": m is not None and m > n, "vacuous": False, "first": n, "second": m}


def mixing_implies_kato(F, targets, start=10, window=50, delta=None, eps=None,
                        horizon=64, grid_step=None, opens=None):
    """If mixing holds over the open suite, the Kato report must flag too."""
    opens = list(opens) if opens is not None else dyadic_opens()
    mixing = all(mixing_probe(F, U, V, start, window, grid_step).found
                 for U in opens for V in targets)
    if not mixing:
        return {"ok": True, "vacuous": True, "mixing": False, "kato": None}
    delta = Fraction(1, 4) if delta is None else delta
    eps = Fraction(1, 2 ** 10) if eps is None else eps
    kato = kato_report(F, delta, eps, opens, horizon, grid_step=grid_step)
    return {"ok": kato.found, "vacuous": False, "mixing": True, "kato": kato.found}


def power_agreement(F, delta, eps, powers=(1, 2, 3), horizon=64, grid_step=None, opens=None):
    """Kato flags for F^k agree across the given powers."""
    report = kato_report(F, delta, eps, opens, horizon, powers, grid_step)
    flags = {w["power"]: w["kato"] for w in report.witnesses}
    return {"ok": report.params["agreement"], "flags": flags, "report": report}
