"""
Built-in algebras and the JSON algebra-file format.

File schema::

    {"name": "sv0",
     "families": [{"symbol": "L", "parity": 0, "offset2": 0}, ...],
     "rules": [{"left": "L", "right": "G", "result": "G",
                "poly": [[numer, denom, powM, powN], ...]}, ...]}

``poly`` encodes sum(numer/denom * m**powM * n**powN) where m, n are the
degrees of the left and right operand. Ordered family pairs that are not
listed are obtained from the reversed rule by skew-supersymmetry; pairs
absent in both orders bracket to zero.
"""

from __future__ import annotations

import json
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any, Mapping

from .core import AlgebraError, AlgebraSpec, Family, Rule, make_poly

BUILTIN = ("sv0", "sv0.5", "witt")


class AlgebraFormatError(AlgebraError):
    """Malformed algebra document."""


class AlgebraValidationError(AlgebraError):
    """Well-formed document whose rules break the grading."""


def _virasoro_rules(with_g: bool) -> list[Rule]:
    rules = [Rule("L", "L", "L", make_poly([(-1, 1, 0), (1, 0, 1)]))]  # n - m
    if with_g:
        rules.append(Rule("L", "G", "G", make_poly([(Fraction(-1, 2), 1, 0), (1, 0, 1)])))  # k - m/2
        rules.append(Rule("G", "G", "L", make_poly([(2, 0, 0)])))
    return rules


def make_super_virasoro(s) -> AlgebraSpec:
    """Centerless super-Virasoro algebra with odd family on the lattice s + Z.

    ``s`` must be 0 (Ramond) or 1/2 (Neveu-Schwarz).
    """
    s = Fraction(s)
    if s == 0:
        name, off = "sv0", 0
    elif s == Fraction(1, 2):
        name, off = "sv0.5", 1
    else:
        raise ValueError("unsupported sector")
    families = (Family("L", 0, 0), Family("G", 1, off))
    return AlgebraSpec(name, families, tuple(_virasoro_rules(True)))


def make_witt() -> AlgebraSpec:
    return AlgebraSpec("witt", (Family("L", 0, 0),), tuple(_virasoro_rules(False)))


def builtin(name: str) -> AlgebraSpec:
    if name == "sv0":
        return make_super_virasoro(0)
    if name == "sv0.5":
        return make_super_virasoro(Fraction(1, 2))
    if name == "witt":
        return make_witt()
    raise KeyError(name)


# -- serialization ----------------------------------------------------------

def algebra_to_dict(alg: AlgebraSpec) -> dict[str, Any]:
    return {
        "name": alg.name,
        "families": [{"symbol": f.symbol, "parity": f.parity, "offset2": f.offset2}
                     for f in alg.families],
        "rules": [{"left": r.left, "right": r.right, "result": r.result,
                   "poly": [[c.numerator, c.denominator, pm, pn] for c, pm, pn in r.poly]}
                  for r in alg.rules],
    }


def dump_algebra(alg: AlgebraSpec) -> str:
    return json.dumps(algebra_to_dict(alg), indent=2) + "\n"


def _need(obj: Mapping, key: str, kind, where: str):
    if not isinstance(obj, Mapping) or key not in obj:
        raise AlgebraFormatError(f"{where}: missing field {key!r}")
    val = obj[key]
    if kind is int:
        ok = isinstance(val, int) and not isinstance(val, bool)
    else:
        ok = isinstance(val, kind)
    if not ok:
        raise AlgebraFormatError(f"{where}: field {key!r} must be {kind.__name__}")
    return val


def load_algebra(document: str | bytes | Mapping) -> AlgebraSpec:
    """Parse and validate an algebra document (JSON text or decoded dict)."""
    if isinstance(document, (str, bytes)):
        try:
            data = json.loads(document)
        except json.JSONDecodeError as exc:
            raise AlgebraFormatError(
                f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    else:
        data = document
    if not isinstance(data, Mapping):
        raise AlgebraFormatError("document: top level must be an object")

    name = _need(data, "name", str, "document")
    families = []
    for i, f in enumerate(_need(data, "families", list, "document")):
        where = f"families[{i}]"
        sym = _need(f, "symbol", str, where)
        par = _need(f, "parity", int, where)
        if par not in (0, 1):
            raise AlgebraFormatError(f"{where}: parity must be 0 or 1")
        families.append(Family(sym, par, _need(f, "offset2", int, where)))
    fam = {f.symbol: f for f in families}

    rules = []
    for i, r in enumerate(_need(data, "rules", list, "document")):
        where = f"rules[{i}]"
        left = _need(r, "left", str, where)
        right = _need(r, "right", str, where)
        result = _need(r, "result", str, where)
        terms = []
        for j, t in enumerate(_need(r, "poly", list, where)):
            if (not isinstance(t, list) or len(t) != 4
                    or not all(isinstance(v, int) and not isinstance(v, bool) for v in t)):
                raise AlgebraFormatError(f"{where}.poly[{j}]: expected [numer, denom, powM, powN]")
            numer, denom, pm, pn = t
            if denom == 0:
                raise AlgebraFormatError(f"{where}.poly[{j}]: zero denominator")
            if pm < 0 or pn < 0:
                raise AlgebraFormatError(f"{where}.poly[{j}]: negative exponent")
            terms.append((Fraction(numer, denom), pm, pn))
        label = f"rule [{left},{right}] -> {result}"
        for s in (left, right, result):
            if s not in fam:
                raise AlgebraValidationError(f"{label}: unknown family {s!r}")
        a, b, c = fam[left], fam[right], fam[result]
        if (a.parity + b.parity) % 2 != c.parity:
            raise AlgebraValidationError(
                f"{label}: parity mismatch ({a.parity}+{b.parity} != {c.parity})")
        if (a.offset2 + b.offset2 - c.offset2) % 2:
            raise AlgebraValidationError(f"{label}: degree lattice mismatch")
        rules.append(Rule(left, right, result, make_poly(terms)))
    try:
        return AlgebraSpec(name, tuple(families), tuple(rules))
    except AlgebraError as exc:
        raise AlgebraValidationError(str(exc)) from exc


def load_algebra_file(path: str | Path) -> AlgebraSpec:
    return load_algebra(Path(path).read_text())


def data_file(name: str) -> str:
    """Text of a shipped algebra file, e.g. ``data_file("sv0.alg")``."""
    return resources.files("superbider").joinpath("data", name).read_text()


def resolve(selector: str) -> AlgebraSpec:
    """Built-in name ("sv0", "sv0.5", "witt") or a path to an algebra file."""
    if selector in BUILTIN:
        return builtin(selector)
    return load_algebra_file(selector)
