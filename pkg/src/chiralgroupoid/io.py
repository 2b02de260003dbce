"""JSON readers and writers for semigroups, twists, representations and
weights; JSON and DOT exports for groupoids, cocycles and algebras.

All files carry ``"format": 1``.  Parse problems raise ``FormatError`` naming
the file and the offending field (and line/column for malformed JSON).
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional

from .groupoid import FiniteGroupoid
from .reports import FormatError
from .semigroup import FiniteInverseSemigroup, PartialBijection, Representation
from .twists import CircleValue, GroupoidCocycle, TwistData

FORMAT = 1


def load_json(path) -> Any:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise FormatError(f"{p}: cannot read ({exc.strerror})") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{p}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    if isinstance(data, dict) and "format" in data and data["format"] != FORMAT:
        raise FormatError(f"{p}: field 'format': unsupported version {data['format']!r}")
    return data


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _field(data: dict, name: str, where: str):
    if not isinstance(data, dict):
        raise FormatError(f"{where}: expected a JSON object")
    if name not in data:
        raise FormatError(f"{where}: missing field '{name}'")
    return data[name]


def _int(x, where: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise FormatError(f"{where}: expected an integer, got {x!r}")
    return x


def parse_fraction(x, where: str = "value") -> Fraction:
    """``[num, den]``, ``"p/q"`` or an int."""
    try:
        if isinstance(x, list) and len(x) == 2:
            num, den = _int(x[0], where), _int(x[1], where)
            if den <= 0:
                raise FormatError(f"{where}: denominator must be positive")
            return Fraction(num, den)
        if isinstance(x, str):
            return Fraction(x)
        if isinstance(x, int) and not isinstance(x, bool):
            return Fraction(x)
    except (ValueError, ZeroDivisionError):
        pass
    raise FormatError(f"{where}: expected [num, den] or 'p/q', got {x!r}")


# -- semigroups --------------------------------------------------------------


def semigroup_from_json(data: dict, where: str = "semigroup") -> tuple[FiniteInverseSemigroup, Optional[frozenset]]:
    table = _field(data, "table", where)
    if not isinstance(table, list) or not all(isinstance(r, list) for r in table):
        raise FormatError(f"{where}: field 'table' must be a list of rows")
    table = [[_int(x, f"{where}: table[{i}][{j}]") for j, x in enumerate(r)] for i, r in enumerate(table)]
    star = data.get("star")
    if star is not None:
        if not isinstance(star, list):
            raise FormatError(f"{where}: field 'star' must be a list or null")
        star = [_int(x, f"{where}: star[{i}]") for i, x in enumerate(star)]
    labels = data.get("elements")
    if labels is not None and (not isinstance(labels, list) or len(labels) != len(table)):
        raise FormatError(f"{where}: field 'elements' must list one label per row")
    dec = data.get("decoration")
    if dec is not None:
        if not isinstance(dec, list):
            raise FormatError(f"{where}: field 'decoration' must be a list or null")
        dec = frozenset(_int(x, f"{where}: decoration") for x in dec)
        if any(not 0 <= x < len(table) for x in dec):
            raise FormatError(f"{where}: field 'decoration' has an index out of range")
    try:
        S = FiniteInverseSemigroup(table, star, labels)
    except FormatError as exc:
        raise FormatError(f"{where}: {exc}") from None
    return S, dec


def semigroup_to_json(S: FiniteInverseSemigroup, decoration=None) -> dict:
    return {
        "format": FORMAT,
        "elements": [S.label(i) for i in S.elements],
        "table": [list(r) for r in S.table],
        "star": None if S.star is None else list(S.star),
        "decoration": None if decoration is None else sorted(decoration),
    }


def read_semigroup(path) -> tuple[FiniteInverseSemigroup, Optional[frozenset]]:
    return semigroup_from_json(load_json(path), str(path))


# -- twists and cocycles ------------------------------------------------------


def twist_from_json(S: FiniteInverseSemigroup, data: dict, where: str = "twist") -> TwistData:
    values = _field(data, "values", where)
    n = S.n
    if not isinstance(values, list) or len(values) != n * n:
        raise FormatError(f"{where}: field 'values' must hold {n * n} entries (row-major)")
    flat = [parse_fraction(v, f"{where}: values[{i}]") for i, v in enumerate(values)]
    tw = TwistData(S, tuple(tuple(CircleValue(flat[i * n + j]) for j in range(n)) for i in range(n)))
    declared = data.get("den_lcm")
    if declared is not None and tw.den_lcm != 1 and _int(declared, f"{where}: den_lcm") % tw.den_lcm:
        raise FormatError(f"{where}: field 'den_lcm' = {declared} is not a multiple of the value denominators")
    return tw


def twist_to_json(omega: TwistData) -> dict:
    return {
        "format": FORMAT,
        "den_lcm": omega.den_lcm,
        "values": [v.pair() for row in omega.values for v in row],
    }


def read_twist(path, S: FiniteInverseSemigroup) -> TwistData:
    return twist_from_json(S, load_json(path), str(path))


def cocycle_to_json(sigma: GroupoidCocycle) -> list:
    return [[g, h, v.pair()] for (g, h), v in sorted(sigma.values.items())]


# -- representations and weights ---------------------------------------------


def representation_from_json(S: FiniteInverseSemigroup, data: dict, where: str = "representation") -> Representation:
    carrier = _int(_field(data, "carrier", where), f"{where}: carrier")
    images = _field(data, "images", where)
    if not isinstance(images, list) or len(images) != S.n:
        raise FormatError(f"{where}: field 'images' must have one entry per element ({S.n})")
    out = []
    for i, img in enumerate(images):
        m = _field(img, "map", f"{where}: images[{i}]")
        if not isinstance(m, dict):
            raise FormatError(f"{where}: images[{i}].map must be an object")
        try:
            out.append(PartialBijection.from_dict(carrier, {int(k): _int(v, f"{where}: images[{i}]") for k, v in m.items()}))
        except (ValueError, IndexError) as exc:
            raise FormatError(f"{where}: images[{i}]: {exc}") from None
    return Representation(S, carrier, tuple(out))


def representation_to_json(rho: Representation) -> dict:
    return {
        "format": FORMAT,
        "carrier": rho.carrier,
        "images": [{"carrier": rho.carrier, "map": {str(k): v for k, v in f.as_dict().items()}} for f in rho.images],
    }


def read_representation(path, S: FiniteInverseSemigroup) -> Representation:
    return representation_from_json(S, load_json(path), str(path))


def read_weights(path):
    from .chirality import WeightFunction

    data = load_json(path)
    if not isinstance(data, dict):
        raise FormatError(f"{path}: expected an object mapping morphisms to weights")
    table = {k: parse_fraction(v, f"{path}: {k}") for k, v in data.items() if k != "format"}
    try:
        return WeightFunction(table)
    except ValueError as exc:
        raise FormatError(f"{path}: {exc}") from None


# -- groupoid export ---------------------------------------------------------


def groupoid_to_json(G: FiniteGroupoid, cocycle: Optional[GroupoidCocycle] = None) -> dict:
    out = {
        "format": FORMAT,
        "units": list(G.units),
        "arrows": [{"id": g, "src": G.src[g], "rng": G.rng[g], "label": G.label(g)} for g in G.arrows()],
        "comp": [[g, h, G.comp[g][h]] for g, h in G.composable_pairs()],
        "inv": list(G.inv),
    }
    if cocycle is not None:
        out["cocycle"] = cocycle_to_json(cocycle)
    return out


def groupoid_from_json(data: dict, where: str = "groupoid") -> FiniteGroupoid:
    units = _field(data, "units", where)
    arrows = _field(data, "arrows", where)
    n = len(arrows)
    src = [_int(_field(a, "src", f"{where}: arrows[{i}]"), where) for i, a in enumerate(arrows)]
    rng = [_int(_field(a, "rng", f"{where}: arrows[{i}]"), where) for i, a in enumerate(arrows)]
    comp = [[-1] * n for _ in range(n)]
    for g, h, gh in _field(data, "comp", where):
        comp[g][h] = gh
    inv = _field(data, "inv", where)
    unit_arrow = [-1] * len(units)
    for g in range(n):
        if src[g] == rng[g] and comp[g][g] == g:
            unit_arrow[src[g]] = g
    if -1 in unit_arrow:
        raise FormatError(f"{where}: some unit has no identity arrow")
    return FiniteGroupoid(
        tuple(map(str, units)), tuple(src), tuple(rng), tuple(map(tuple, comp)), tuple(inv), tuple(unit_arrow),
        tuple(str(a.get("label", i)) for i, a in enumerate(arrows)),
    )


def groupoid_to_dot(G: FiniteGroupoid, name: str = "G") -> str:
    """Units as nodes, non-identity arrows as edges ``src -> rng``."""
    lines = [f"digraph {json.dumps(name)} {{"]
    for u, lab in enumerate(G.units):
        lines.append(f"  u{u} [label={json.dumps(lab)}];")
    for g in G.arrows():
        if G.is_unit(g):
            continue
        lines.append(f"  u{G.src[g]} -> u{G.rng[g]} [label={json.dumps(G.label(g))}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
