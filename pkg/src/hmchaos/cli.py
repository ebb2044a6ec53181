"""Command-line experiment runner.

Every invocation runs one probe.  Parameters may be given as ``key=value``
tokens, as ``--key value`` flags, or in a JSON file via ``--config``;
flags and tokens override the file.  Exit status: 0 completed, 2 bad
configuration, 3 resource budget exceeded, 4 inadmissible target region.
"""
import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field

from .errors import AdmissibilityError, ParameterError, ResourceError, SearchExhausted
from .metric_core import FiniteSet, OpenRegion, dist_asym, hausdorff, parse_number
from .multimap import orbit
from .systems import FIXTURES, fixture, fixture_names, parse_system

EXIT_OK, EXIT_CONFIG, EXIT_RESOURCE, EXIT_ADMISSIBILITY = 0, 2, 3, 4

COMMON = {"system", "mode", "format", "out", "seed"}
PROBES = {
    "iterate": {"x", "n"},
    "hausdorff": {"A", "B"},
    "profile": {"x", "y", "horizon", "t", "window"},
    "liyorke": {"x", "y", "pairs", "horizon", "delta", "eps", "window"},
    "kato": {"delta", "eps", "horizon", "powers", "grid_step", "opens"},
    "transitive": {"U", "V", "horizon", "min_time", "grid_step"},
    "mixing": {"U", "V", "U2", "V2", "start", "window", "grid_step"},
    "dc-pair": {"A1", "A2", "depth", "U0", "grid_step", "horizon", "max_refinements",
                "t_small", "eps_sep", "cx", "cy"},
    "snw": {"V", "y", "horizon", "threshold", "window", "checkpoints"},
    "word": {"n", "budget", "block"},
    "example4": {"K", "horizon", "budget"},
    "fixtures": set(),
}
CSV_PROBES = {"iterate", "profile", "word"}
DEFAULT_SYSTEM = {"snw": "example4"}


@dataclass
class RunConfig:
    probe: str
    system: str = "example1"
    mode: str = "exact"
    format: str = "json"
    out: str = None
    seed: int = 0  # reserved; every search is deterministic
    params: dict = field(default_factory=dict)

    @classmethod
    def from_mapping(cls, data):
        data = {str(k).replace("-", "_"): v for k, v in data.items()}
        probe = data.pop("probe", None)
        if probe is None:
            raise ParameterError("no probe given; choose one of " + ", ".join(sorted(PROBES)))
        probe = str(probe)
        if probe not in PROBES:
            raise ParameterError(f"unknown probe {probe!r}; choose one of {', '.join(sorted(PROBES))}")
        allowed = PROBES[probe]
        unknown = sorted(set(data) - allowed - COMMON)
        if unknown:
            raise ParameterError(f"probe {probe} does not take {', '.join(unknown)}")
        cfg = cls(probe=probe,
                  system=str(data.pop("system", DEFAULT_SYSTEM.get(probe, "example1"))),
                  mode=str(data.pop("mode", "exact")),
                  format=str(data.pop("format", "json")),
                  out=data.pop("out", None),
                  seed=_int(data.pop("seed", 0), "seed"),
                  params=data)
        cfg.validate()
        return cfg

    def validate(self):
        if self.mode not in ("exact", "float"):
            raise ParameterError(f"mode must be exact or float, got {self.mode!r}")
        if self.format not in ("json", "csv"):
            raise ParameterError(f"format must be json or csv, got {self.format!r}")
        if self.format == "csv" and self.probe not in CSV_PROBES:
            raise ParameterError(f"csv output is available for {', '.join(sorted(CSV_PROBES))}")
        p = self.params
        for key in ("horizon", "n", "start", "window", "depth", "K", "budget", "max_refinements"):
            if key in p and _int(p[key], key) < 1:
                raise ParameterError(f"{key} must be >= 1")
        if "min_time" in p and _int(p["min_time"], "min_time") < 0:
            raise ParameterError("min_time must be >= 0")
        for key in ("delta", "eps", "t_small", "eps_sep"):
            if key in p and _num(p[key], key) <= 0:
                raise ParameterError(f"{key} must be positive")
        if "grid_step" in p and not 0 < _num(p["grid_step"], "grid_step") <= 1:
            raise ParameterError("grid_step must lie in (0,1]")


def _int(value, name):
    text = str(value).strip()
    try:
        if "^" in text:
            base, exp = text.split("^", 1)
            return int(base) ** int(exp)
        return int(text)
    except ValueError:
        raise ParameterError(f"{name} must be an integer, got {value!r}") from None


def _num(value, name):
    try:
        return parse_number(value)
    except ParameterError:
        raise ParameterError(f"{name} must be a number, got {value!r}") from None


def _list(value):
    if isinstance(value, (list, tuple)):
        return [str(v) for v in value]
    return [s.strip() for s in str(value).split(",") if s.strip()]


def _regions(value, exact):
    items = value if isinstance(value, (list, tuple)) else str(value).split(";")
    return [OpenRegion.from_text(str(s), exact) for s in items if str(s).strip()]


def _set(value, F=None, exact=True):
    if isinstance(value, (list, tuple)):
        if F is not None:
            return FiniteSet([F.point(v) for v in value], F.tol)
        return FiniteSet([parse_number(v, exact) for v in value])
    return FiniteSet.from_text(str(value), exact)


def _need(params, key):
    if key not in params:
        raise ParameterError(f"missing required parameter {key}")
    return params[key]


# -- probe runners -----------------------------------------------------------

def _system(cfg):
    return parse_system(cfg.system, exact=cfg.mode == "exact")


def _run_iterate(cfg):
    F = _system(cfg)
    x = F.point(_need(cfg.params, "x"))
    n = _int(cfg.params.get("n", 5), "n")
    sets = orbit(F, x, n)
    if cfg.format == "csv":
        return _csv(["n", "set"], [[i, A.to_text()] for i, A in enumerate(sets)])
    return _json({"command": "iterate", "system": F.name or "custom", "x": _enc(x), "n": n,
                  "sets": [A.to_text() for A in sets]})


def _run_hausdorff(cfg):
    exact = cfg.mode == "exact"
    A = _set(_need(cfg.params, "A"), exact=exact)
    B = _set(_need(cfg.params, "B"), exact=exact)
    return _json({"command": "hausdorff", "A": A.to_text(), "B": B.to_text(),
                  "dist_AB": _enc(dist_asym(A, B)), "dist_BA": _enc(dist_asym(B, A)),
                  "d_H": _enc(hausdorff(A, B))})


def _run_profile(cfg):
    from .indicators.profile import distributional_profile

    F, p = _system(cfg), cfg.params
    grid = [_num(t, "t") for t in _list(p.get("t", "1/8,1/4,1/2,1"))]
    horizon = _int(p.get("horizon", 100), "horizon")
    window = _int(p["window"], "window") if "window" in p else None
    prof = distributional_profile(F, _need(p, "x"), _need(p, "y"), horizon, grid, window)
    if cfg.format == "csv":
        return _csv(["k", "t", "phi"], [[k, _enc(t), _enc(v)] for k, t, v in prof.rows()])
    return _json({"command": "profile", "horizon": horizon, "window": prof.window,
                  "t_grid": _enc(list(prof.t_grid)), "phi": _enc(list(prof.phi)),
                  "lower": _enc(list(prof.lower)), "upper": _enc(list(prof.upper)),
                  "caveat": "finite-horizon estimate"})


def _run_liyorke(cfg):
    from .indicators.probes import li_yorke_scan

    F, p = _system(cfg), cfg.params
    if "pairs" in p:
        pairs = [tuple(s.split(":", 1)) for s in _list(p["pairs"])]
    else:
        pairs = [(_need(p, "x"), _need(p, "y"))]
    window = _int(p["window"], "window") if "window" in p else None
    return li_yorke_scan(F, pairs, _int(p.get("horizon", 100), "horizon"),
                         _num(p.get("delta", "1/2"), "delta"), _num(p.get("eps", "1/8"), "eps"),
                         window)


def _run_kato(cfg):
    from .indicators.probes import kato_report

    F, p = _system(cfg), cfg.params
    opens = _regions(p["opens"], cfg.mode == "exact") if "opens" in p else None
    powers = [_int(k, "powers") for k in _list(p.get("powers", "1"))]
    return kato_report(F, _num(p.get("delta", "1/4"), "delta"), _num(p.get("eps", "1/2^10"), "eps"),
                       opens, _int(p.get("horizon", 64), "horizon"), powers,
                       _num(p.get("grid_step", "1/2^10"), "grid_step"))


def _region(p, key, exact):
    return OpenRegion.from_text(str(_need(p, key)), exact)


def _run_transitive(cfg):
    from .indicators.probes import transitivity_probe

    F, p, ex = _system(cfg), cfg.params, cfg.mode == "exact"
    return transitivity_probe(F, _region(p, "U", ex), _region(p, "V", ex),
                              _int(p.get("horizon", 64), "horizon"),
                              _int(p.get("min_time", 0), "min_time"),
                              _num(p.get("grid_step", "1/2^10"), "grid_step"))


def _run_mixing(cfg):
    from .indicators.probes import mixing_probe, weak_mixing_probe

    F, p, ex = _system(cfg), cfg.params, cfg.mode == "exact"
    start = _int(p.get("start", 10), "start")
    window = _int(p.get("window", 50), "window")
    step = _num(p.get("grid_step", "1/2^10"), "grid_step")
    if "U2" in p or "V2" in p:
        pairs = [(_region(p, "U", ex), _region(p, "V", ex)),
                 (_region(p, "U2", ex), _region(p, "V2", ex))]
        return weak_mixing_probe(F, pairs, start + window, step)
    return mixing_probe(F, _region(p, "U", ex), _region(p, "V", ex), start, window, step)


def _run_dc_pair(cfg):
    from .indicators.report import ChaosReport
    from .indicators.synthesis import synthesize_dc_pair, verify_dc_seq

    F, p = _system(cfg), cfg.params
    depth = _int(p.get("depth", 6), "depth")
    A1 = _set(p.get("A1", "{0}"), F, cfg.mode == "exact")
    A2 = _set(p.get("A2", "{0, 1}"), F, cfg.mode == "exact")
    U0 = _region(p, "U0", cfg.mode == "exact") if "U0" in p else None
    horizon = _int(p.get("horizon", 64), "horizon")
    try:
        fam = synthesize_dc_pair(F, A1, A2, depth, U0,
                                 _num(p.get("grid_step", "1/2^8"), "grid_step"), horizon,
                                 _int(p.get("max_refinements", 8), "max_refinements"))
    except SearchExhausted as exc:
        return ChaosReport("dc-seq", False, [],
                           {"system": F.name or "custom", "depth": depth, "exhausted_level": exc.level,
                            "exhausted_choice": exc.choice, "message": str(exc)}, horizon)
    report = fam.to_report(F)
    failures = fam.verify(F)
    report.found = not failures
    cx = str(p.get("cx", "1" * depth))
    cy = str(p.get("cy", "1" * min(2, depth) + "2" * max(depth - 2, 0)))
    if {cx, cy} <= dict(fam.members).keys():
        check = verify_dc_seq(F, (fam.point(cx), fam.point(cy)), fam.times,
                              _num(p.get("t_small", "1/2"), "t_small"),
                              _num(p.get("eps_sep", "1/4"), "eps_sep"), (cx, cy))
        report.params["counting"] = {"cx": cx, "cy": cy, "found": check.found,
                                     "checkpoints": check.witnesses}
    report.params["replay_failures"] = failures
    return report


def _run_snw(cfg):
    from .indicators.probes import snw_frequency

    F, p = _system(cfg), cfg.params
    V = OpenRegion.from_text(str(p.get("V", "[10111]")), cfg.mode == "exact")
    ys = [s for s in str(p.get("y", "~u")).split(";") if s.strip()]
    window = _int(p["window"], "window") if "window" in p else None
    marks = [_int(c, "checkpoints") for c in _list(p.get("checkpoints", ""))]
    return snw_frequency(F, V, ys, _int(p.get("horizon", 5 ** 5), "horizon"),
                         _num(p.get("threshold", 0), "threshold"), window, marks)


def _words(p):
    from .symbolic.words import WordSystem

    return WordSystem(_int(p.get("budget", 10), "budget"))


def _run_word(cfg):
    from .symbolic.example4 import frequency_table
    from .symbolic.words import word_text

    p = cfg.params
    n = _int(_need(p, "n"), "n")
    words = _words(p)
    if "block" in p:
        rows = frequency_table(str(p["block"]), range(1, n + 1), words)
        if cfg.format == "csv":
            return _csv(["k", "count", "freq", "bound"],
                        [[r["k"], r["count"], _enc(r["freq"]), _enc(r["bound"]) or ""] for r in rows])
        return _json({"command": "word", "block": str(p["block"]), "table": _enc(rows)})
    text = word_text(words.word(n))
    if cfg.format == "csv":
        return _csv(["n", "length", "word"], [[n, len(text), text]])
    return _json({"command": "word", "n": n, "length": len(text), "word": text})


def _run_example4(cfg):
    from .symbolic.example4 import verify_example4

    p = cfg.params
    return verify_example4(_int(p.get("K", 3), "K"), _int(p.get("horizon", "5^7"), "horizon"),
                           words=_words(p))


def _run_fixtures(cfg):
    exact = cfg.mode == "exact"
    out = {name: fixture(name, exact).describe() for name in sorted(FIXTURES)}
    return _json({"command": "fixtures", "names": fixture_names(), "systems": out})


RUNNERS = {
    "iterate": _run_iterate, "hausdorff": _run_hausdorff, "profile": _run_profile,
    "liyorke": _run_liyorke, "kato": _run_kato, "transitive": _run_transitive,
    "mixing": _run_mixing, "dc-pair": _run_dc_pair, "snw": _run_snw, "word": _run_word,
    "example4": _run_example4, "fixtures": _run_fixtures,
}


# -- output --------------------------------------------------------------------

def _enc(value):
    from .indicators.report import encode

    return encode(value)


def _json(data):
    return json.dumps(data, indent=2)


def _csv(header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue().rstrip("\n")


def _error(code, name, exc):
    return code, _json({"error": {"code": name, "exit_status": code, "message": str(exc)}})


def run(config):
    """Execute one probe; returns (exit status, serialized output)."""
    try:
        cfg = config if isinstance(config, RunConfig) else RunConfig.from_mapping(dict(config))
        result = RUNNERS[cfg.probe](cfg)
    except ResourceError as exc:
        return _error(EXIT_RESOURCE, "resource_error", exc)
    except AdmissibilityError as exc:
        return _error(EXIT_ADMISSIBILITY, "admissibility_error", exc)
    except (ParameterError, KeyError, ValueError) as exc:
        return _error(EXIT_CONFIG, "config_error", exc)
    text = result if isinstance(result, str) else result.to_json()
    return EXIT_OK, text


def _collect(tokens):
    """Split free tokens into (probe, {key: value})."""
    probe, values = None, {}
    it = iter(tokens)
    for tok in it:
        if tok.startswith("--"):
            key = tok[2:]
            if "=" in key:
                key, val = key.split("=", 1)
            else:
                val = next(it, None)
                if val is None:
                    raise ParameterError(f"flag --{key} needs a value")
            values[key.replace("-", "_")] = val
        elif "=" in tok:
            key, val = tok.split("=", 1)
            values[key] = val
        elif probe is None:
            probe = tok
        else:
            raise ParameterError(f"unexpected argument {tok!r}")
    return probe, values


def build_parser():
    parser = argparse.ArgumentParser(
        prog="hmchaos",
        description="Finite-horizon chaos probes for multiple mappings.",
        epilog="probes: " + ", ".join(sorted(PROBES)) +
               ".  Parameters: key=value tokens or --key value flags.",
    )
    parser.add_argument("--config", help="JSON file of parameters (flags override it)")
    parser.add_argument("--out", help="write the output here instead of stdout")
    parser.add_argument("--format", choices=("json", "csv"))
    parser.add_argument("--mode", choices=("exact", "float"))
    return parser


def main(argv=None):
    parser = build_parser()
    args, rest = parser.parse_known_args(argv)
    data = {}
    try:
        if args.config:
            with open(args.config) as fh:
                loaded = json.load(fh)
            if not isinstance(loaded, dict):
                raise ParameterError("config file must hold a JSON object")
            data.update(loaded)
        probe, values = _collect(rest)
        if probe is not None:
            data["probe"] = probe
        data.update(values)
        for key in ("out", "format", "mode"):
            if getattr(args, key) is not None:
                data[key] = getattr(args, key)
        config = RunConfig.from_mapping(data)
    except (ParameterError, OSError, json.JSONDecodeError) as exc:
        code, text = _error(EXIT_CONFIG, "config_error", exc)
        print(text, file=sys.stderr)
        return code
    code, text = run(config)
    if code != EXIT_OK:
        print(text, file=sys.stderr)
        return code
    if config.out:
        with open(config.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
