"""Structured probe output and its JSON form."""
import json
from dataclasses import dataclass, field
from fractions import Fraction

from ..metric_core import FiniteSet, OpenRegion, SymbolPoint, format_number

KINDS = ("li-yorke", "dc", "dc-seq", "sensitivity", "accessibility", "kato",
         "transitive", "weak-mixing", "mixing", "snw")
CAVEAT = "finite-horizon estimate"
FIELDS = ("kind", "found", "witnesses", "params", "horizon", "caveat")


def encode(value):
    """JSON-ready form; exact rationals become ``p/q`` strings."""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, Fraction):
        return format_number(value)
    if isinstance(value, int):
        return value
    if isinstance(value, float):
        return format_number(value)
    if isinstance(value, (SymbolPoint, FiniteSet, OpenRegion)):
        return value.to_text()
    if isinstance(value, dict):
        return {str(k): encode(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [encode(v) for v in value]
    if hasattr(value, "item"):  # numpy scalars
        return encode(value.item())
    raise TypeError(f"cannot encode {type(value).__name__}")


@dataclass
class ChaosReport:
    kind: str
    found: bool
    witnesses: list = field(default_factory=list)
    params: dict = field(default_factory=dict)
    horizon: int = 0
    caveat: str = CAVEAT

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown report kind {self.kind!r}")

    def to_dict(self):
        return {
            "kind": self.kind,
            "found": bool(self.found),
            "witnesses": encode(self.witnesses),
            "params": encode(self.params),
            "horizon": int(self.horizon),
            "caveat": self.caveat,
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, data):
        missing = [k for k in FIELDS if k not in data]
        if missing:
            raise ValueError(f"report is missing fields {missing}")
        return cls(data["kind"], data["found"], list(data["witnesses"]),
                   dict(data["params"]), data["horizon"], data["caveat"])

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))
