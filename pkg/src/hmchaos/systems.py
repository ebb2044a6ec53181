"""Built-in systems, all with dyadic breakpoints so exact mode applies."""
from fractions import Fraction

from .errors import ParameterError
from .metric_core import parse_number
from .multimap import Constant, ConstantSequence, MultiMap, PiecewiseLinear, Shift

HALF = Fraction(1, 2)


def tent_map(name="tent"):
    return PiecewiseLinear([(0, 0), (HALF, 1), (1, 0)], name)


def identity_map(name="identity"):
    return PiecewiseLinear([(0, 0), (1, 1)], name)


def example1(exact=True):
    """f1 = 0, f2 = tent."""
    return MultiMap((Constant(0, "f1"), tent_map("f2")), exact=exact, name="example1")


def example2(exact=True):
    """f1 = 2x then plateau at 1, f2 = plateau at 1 then 2-2x; composite is the tent."""
    f1 = PiecewiseLinear([(0, 0), (HALF, 1), (1, 1)], "f1")
    f2 = PiecewiseLinear([(0, 1), (HALF, 1), (1, 0)], "f2")
    return MultiMap((f1, f2), exact=exact, name="example2")


def example2_composite():
    """The tent map f that both halves of example2 patch together."""
    return tent_map("f")


def example3(exact=True):
    """Tent and its reflection 1 - tent, so f1^n(x) + f2^n(x) = 1."""
    f2 = PiecewiseLinear([(0, 1), (HALF, 0), (1, 1)], "f2")
    return MultiMap((tent_map("f1"), f2), exact=exact, name="example3")


def tent(exact=True):
    return MultiMap((tent_map(),), exact=exact, name="tent")


def identity(exact=True):
    return MultiMap((identity_map(),), exact=exact, name="identity")


def const(value, exact=True):
    c = parse_number(value)
    return MultiMap((Constant(c),), exact=exact, name=f"const:{value}")


def _example4(exact=True):
    from .symbolic.example4 import example4_system

    return example4_system()


FIXTURES = {
    "example1": example1,
    "example2": example2,
    "example3": example3,
    "tent": tent,
    "identity": identity,
    "example4": _example4,
}


def fixture_names():
    return sorted(FIXTURES) + ["const:<dyadic>"]


def fixture(name, exact=True):
    """Look up a built-in system by its CLI name."""
    if name.startswith("const:"):
        return const(name.split(":", 1)[1], exact)
    try:
        return FIXTURES[name](exact=exact)
    except KeyError:
        raise ParameterError(
            f"unknown fixture {name!r}; available: {', '.join(fixture_names())}"
        ) from None


def _parse_pairs(text):
    body = text.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise ParameterError(f"pwl breakpoints {text!r} must be a bracketed list")
    body = body[1:-1].replace(" ", "")
    pairs = []
    for chunk in body.split(")"):
        chunk = chunk.strip(",")
        if not chunk:
            continue
        if not chunk.startswith("("):
            raise ParameterError(f"cannot parse breakpoint near {chunk!r}")
        x, y = chunk[1:].split(",")
        pairs.append((parse_number(x), parse_number(y)))
    return pairs


def parse_map(text, index=0):
    """One map from ``pwl: [...]``, ``const: c``, ``shift`` or ``const-seq: 0*``."""
    kind, _, arg = text.strip().partition(":")
    kind = kind.strip()
    name = f"f{index + 1}"
    if kind == "pwl":
        return PiecewiseLinear(_parse_pairs(arg), name)
    if kind == "const":
        return Constant(parse_number(arg), name)
    if kind == "shift":
        return Shift(name)
    if kind == "const-seq":
        return ConstantSequence(arg.strip(), name)
    raise ParameterError(f"unknown map kind {kind!r}")


def parse_system(spec, exact=True):
    """A fixture name, a ``;``-separated map list, or a list/dict of map strings."""
    if isinstance(spec, MultiMap):
        return spec
    if isinstance(spec, dict):
        maps = spec.get("maps")
        if not maps:
            raise ParameterError("system description needs a 'maps' list")
        items, name = maps, spec.get("name", "custom")
    elif isinstance(spec, (list, tuple)):
        items, name = spec, "custom"
    else:
        text = str(spec).strip()
        if text in FIXTURES or (text.startswith("const:") and ";" not in text):
            return fixture(text.replace(" ", ""), exact)
        items, name = [s for s in text.split(";") if s.strip()], "custom"
    maps = tuple(parse_map(s, i) for i, s in enumerate(items))
    return MultiMap(maps, exact=exact, name=name)
