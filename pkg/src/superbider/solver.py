"""
Exact linear systems for super-biderivations and super commuting maps.

Unknowns are the coefficients of a degree- and parity-homogeneous map on a
truncation window. Each admissible basis triple (pair, for commuting maps)
contributes one row per output basis vector. The kernel is computed exactly,
then restricted to the interior ``|deg| <= N - B`` where no constraint is
missing; claims are made about that restriction only.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Any, Iterable, Mapping

from .bimaps import (BilinearMapCoeffs, LinearMapCoeffs, OutsideWindow, Window,
                     bimap_from_dict, bimap_to_dict, canonical_pairs, left_leibniz_degrees,
                     linmap_from_dict, linmap_to_dict, right_leibniz_degrees)
from .core import AlgebraSpec, BasisVector, Element, bracket, psign
from .exactlin import SparseMatrix, SparseVector, nullspace, row_space_basis

SCHEMA_VERSION = 1


@dataclass
class UnknownIndex:
    """Ordered unknowns plus inverse lookup.

    For bilinear maps each key is ``(i, j, k)``: the coefficient of ``k`` in
    ``phi(i, j)``. For linear maps each key is ``(i, k)``.
    """

    keys: list[tuple]
    lookup: dict[tuple, int] = field(default_factory=dict)

    def __post_init__(self):
        self.lookup = {k: n for n, k in enumerate(self.keys)}

    def __len__(self):
        return len(self.keys)


def _outputs(alg: AlgebraSpec, deg2: int, parity: int, n2: int) -> list[BasisVector]:
    """Basis vectors of the given degree and parity inside the window."""
    if abs(deg2) > n2:
        return []
    return sorted(BasisVector(f.symbol, deg2) for f in alg.families
                  if f.parity == parity and (deg2 - f.offset2) % 2 == 0)


def bider_unknowns(alg: AlgebraSpec, window: Window, gamma: int, shift2: int) -> UnknownIndex:
    keys = []
    for i, j in canonical_pairs(alg, window):
        p = (alg.parity(i) + alg.parity(j) + gamma) % 2
        for k in _outputs(alg, i.deg2 + j.deg2 + shift2, p, window.n2):
            keys.append((i, j, k))
    keys.sort()
    return UnknownIndex(keys)


def _primitive_key(row: Mapping[int, Fraction]) -> tuple[tuple[int, int], ...] | None:
    """Integer-normalized row (content 1, positive lead) used for deduplication."""
    items = [(c, v) for c, v in sorted(row.items()) if v]
    if not items:
        return None
    den = 1
    for _, v in items:
        den = den * v.denominator // gcd(den, v.denominator)
    ints = [(c, int(v * den)) for c, v in items]
    g = 0
    for _, v in ints:
        g = gcd(g, v)
    if ints[0][1] < 0:
        g = -g
    return tuple((c, v // g) for c, v in ints)


class _RowSink:
    """Collect rows, dropping zeros and duplicates, in first-seen order."""

    def __init__(self):
        self.rows: list[tuple[tuple[int, int], ...]] = []
        self._seen: set = set()

    def add(self, row: Mapping[int, Fraction]) -> None:
        key = _primitive_key(row)
        if key is not None and key not in self._seen:
            self._seen.add(key)
            self.rows.append(key)

    def matrix(self, cols: int) -> SparseMatrix:
        return SparseMatrix(len(self.rows), cols,
                            tuple(tuple((c, Fraction(v)) for c, v in r) for r in self.rows))


def build_bider_system(alg: AlgebraSpec, window: Window, gamma: int,
                       shift2: int) -> tuple[SparseMatrix, UnknownIndex]:
    """Rows of both super-Leibniz rules over every admissible basis triple."""
    idx = bider_unknowns(alg, window, gamma, shift2)
    look = idx.lookup
    basis = alg.basis(window.N)
    n2 = window.n2
    par = {b: alg.parity(b) for b in basis}

    # phi(a, b) for an ordered pair -> [(sign, col, k)], skew rule applied
    sym_cache: dict[tuple[BasisVector, BasisVector], list] = {}

    def sym(a: BasisVector, b: BasisVector) -> list:
        hit = sym_cache.get((a, b))
        if hit is not None:
            return hit
        if a <= b:
            key, s = (a, b), 1
        else:
            key, s = (b, a), -psign(par[a] * par[b])
        out = []
        if not (key[0] == key[1] and par[a] == 0):
            p = (par[a] + par[b] + gamma) % 2
            for k in _outputs(alg, a.deg2 + b.deg2 + shift2, p, n2):
                out.append((s, look[(key[0], key[1], k)], k))
        sym_cache[(a, b)] = out
        return out

    br = alg.bracket_basis
    sink = _RowSink()

    def add(rows: dict, e: BasisVector, col: int, v) -> None:
        r = rows.setdefault(e, {})
        r[col] = r.get(col, 0) + v

    for x in basis:
        px = par[x]
        for y in basis:
            py = par[y]
            for z in basis:
                pz = par[z]
                # phi([x,y],z) = (-1)^{g|x|}[x,phi(y,z)] + (-1)^{|y||z|}[phi(x,z),y]
                if all(abs(d) <= n2 for d in left_leibniz_degrees(shift2, x.deg2, y.deg2, z.deg2)):
                    rows: dict = {}
                    for e, c in br(x, y):
                        for s, col, k in sym(e, z):
                            add(rows, k, col, s * c)
                    s1 = psign(gamma * px)
                    for s, col, k in sym(y, z):
                        for e, c in br(x, k):
                            add(rows, e, col, -s1 * s * c)
                    s2 = psign(py * pz)
                    for s, col, k in sym(x, z):
                        for e, c in br(k, y):
                            add(rows, e, col, -s2 * s * c)
                    for e in sorted(rows):
                        sink.add(rows[e])
                # phi(x,[y,z]) = [phi(x,y),z] + (-1)^{(g+|x|)|y|}[y,phi(x,z)]
                if all(abs(d) <= n2 for d in right_leibniz_degrees(shift2, x.deg2, y.deg2, z.deg2)):
                    rows = {}
                    for e, c in br(y, z):
                        for s, col, k in sym(x, e):
                            add(rows, k, col, s * c)
                    for s, col, k in sym(x, y):
                        for e, c in br(k, z):
                            add(rows, e, col, -s * c)
                    s3 = psign((gamma + px) * py)
                    for s, col, k in sym(x, z):
                        for e, c in br(y, k):
                            add(rows, e, col, -s3 * s * c)
                    for e in sorted(rows):
                        sink.add(rows[e])
    return sink.matrix(len(idx)), idx


def commuting_unknowns(alg: AlgebraSpec, window: Window, sector: int, shift2: int) -> UnknownIndex:
    keys = []
    for i in alg.basis(window.N):
        for k in _outputs(alg, i.deg2 + shift2, (alg.parity(i) + sector) % 2, window.n2):
            keys.append((i, k))
    keys.sort()
    return UnknownIndex(keys)


def build_commuting_system(alg: AlgebraSpec, window: Window, sector: int,
                           shift2: int = 0) -> tuple[SparseMatrix, UnknownIndex]:
    """Rows of [f(x),y] - (-1)^{|f||x|}[x,f(y)] over admissible ordered basis pairs."""
    idx = commuting_unknowns(alg, window, sector, shift2)
    basis = alg.basis(window.N)
    n2 = window.n2
    fcols: dict[BasisVector, list] = {}
    for n, (i, k) in enumerate(idx.keys):
        fcols.setdefault(i, []).append((n, k))
    br = alg.bracket_basis
    sink = _RowSink()
    for x in basis:
        if abs(x.deg2 + shift2) > n2:
            continue
        s = psign(sector * alg.parity(x))
        for y in basis:
            if abs(y.deg2 + shift2) > n2 or abs(x.deg2 + y.deg2 + shift2) > n2:
                continue
            rows: dict = {}
            for col, k in fcols.get(x, ()):
                for e, c in br(k, y):
                    r = rows.setdefault(e, {})
                    r[col] = r.get(col, 0) + c
            for col, k in fcols.get(y, ()):
                for e, c in br(x, k):
                    r = rows.setdefault(e, {})
                    r[col] = r.get(col, 0) - s * c
            for e in sorted(rows):
                sink.add(rows[e])
    return sink.matrix(len(idx)), idx


# -- reports ----------------------------------------------------------------

@dataclass(eq=False)
class SolverReport:
    kind: str  # "bider" or "commuting"
    algebra: str
    window: Window
    gamma: int
    shift2: int
    unknowns: int
    constraints: int
    nullspace_dim: int
    interior_dim: int
    interior_basis: list
    is_inner: bool
    inner_coordinates: list[Fraction]
    warnings: list[str] = field(default_factory=list)
    # full kernel basis on the window; kept in memory only, never serialized
    solutions: list = field(default_factory=list, repr=False)

    def __eq__(self, other):
        if not isinstance(other, SolverReport):
            return NotImplemented
        return report_to_dict(self) == report_to_dict(other)


def _vector_to_map(kind: str, alg: AlgebraSpec, window: Window, gamma: int, shift2: int,
                   keys: list[tuple], vec: SparseVector):
    if kind == "bider":
        acc: dict = {}
        for n, v in vec.entries:
            i, j, k = keys[n]
            acc.setdefault((i, j), []).append((k, v))
        return BilinearMapCoeffs(alg, window, gamma, shift2,
                                 {p: Element(t) for p, t in acc.items()})
    acc = {}
    for n, v in vec.entries:
        i, k = keys[n]
        acc.setdefault(i, []).append((k, v))
    return LinearMapCoeffs(alg, window, gamma, shift2, {i: Element(t) for i, t in acc.items()})


def _reference_vector(kind: str, alg: AlgebraSpec, keys: list[tuple], gamma: int,
                      shift2: int) -> dict[int, Fraction]:
    """Interior coordinates of the bracket map (bider) or the identity (commuting)."""
    if gamma != 0 or shift2 != 0:
        return {}
    ref = {}
    for n, key in enumerate(keys):
        if kind == "bider":
            i, j, k = key
            c = bracket(alg, Element.basis(i), Element.basis(j)).coeff(k)
        else:
            i, k = key
            c = Fraction(1) if i == k else Fraction(0)
        if c:
            ref[n] = c
    return ref


def _certify(kind: str, alg: AlgebraSpec, window: Window, gamma: int, shift2: int,
             mat: SparseMatrix, idx: UnknownIndex) -> SolverReport:
    kernel = nullspace(mat)
    b2 = window.interior2
    inner_keys = [key for key in idx.keys if all(abs(b.deg2) <= b2 for b in key)]
    pos = {key: n for n, key in enumerate(inner_keys)}
    remap = {idx.lookup[key]: n for key, n in pos.items()}
    projected = []
    for v in kernel:
        d = {remap[c]: x for c, x in v.entries if c in remap}
        if d:
            projected.append(SparseVector.from_dict(len(inner_keys), d))
    basis = row_space_basis(projected, len(inner_keys))

    ref = _reference_vector(kind, alg, inner_keys, gamma, shift2)
    ref_dim = 1 if ref else 0
    coords: list[Fraction] = []
    is_inner = len(basis) == ref_dim
    if is_inner and ref_dim:
        p = min(ref)
        for b in basis:
            c = b[p] / ref[p]
            if {n: c * v for n, v in ref.items()} != b.to_dict():
                is_inner = False
                break
            coords.append(c)
        if not is_inner:
            coords = []

    warnings = []
    if mat.rows == 0:
        warnings.append("degenerate window: no admissible constraints")
    if window.N - window.B < 2:
        warnings.append("near-degenerate window: interior radius below 2")
    iw = window.interior()
    sols_window = window
    return SolverReport(
        kind=kind, algebra=alg.name, window=window, gamma=gamma, shift2=shift2,
        unknowns=len(idx), constraints=mat.rows, nullspace_dim=len(kernel),
        interior_dim=len(basis),
        interior_basis=[_vector_to_map(kind, alg, iw, gamma, shift2, inner_keys, b) for b in basis],
        is_inner=is_inner, inner_coordinates=coords, warnings=warnings,
        solutions=[_vector_to_map(kind, alg, sols_window, gamma, shift2, idx.keys, v) for v in kernel],
    )


def solve_bider(alg: AlgebraSpec, window: Window, gamma: int = 0, shift2: int = 0) -> SolverReport:
    mat, idx = build_bider_system(alg, window, gamma, shift2)
    return _certify("bider", alg, window, gamma, shift2, mat, idx)


def solve_commuting(alg: AlgebraSpec, window: Window, sector: int = 0, shift2: int = 0) -> SolverReport:
    """``is_inner`` on the returned report means: the interior solutions are
    exactly the scalar multiples of the identity."""
    mat, idx = build_commuting_system(alg, window, sector, shift2)
    return _certify("commuting", alg, window, sector, shift2, mat, idx)


def default_shift_range(alg: AlgebraSpec) -> list[int]:
    """Doubled shifts for degrees -2..2; half-integer steps only when some
    family sits on a half-integer lattice."""
    half = any(f.offset2 % 2 for f in alg.families)
    return [s for s in range(-4, 5) if half or s % 2 == 0]


def psi_from_linear(f: LinearMapCoeffs) -> BilinearMapCoeffs:
    """Psi(x, y) = [f(x), y], stored on canonical pairs."""
    alg, window = f.algebra, f.window
    coeffs = {}
    for i, j in canonical_pairs(alg, window):
        if abs(i.deg2 + j.deg2 + f.shift2) > window.n2:
            continue
        try:
            val = bracket(alg, f.value(i), Element.basis(j))
        except OutsideWindow:
            s = -psign(alg.parity(i) * alg.parity(j))
            val = s * bracket(alg, f.value(j), Element.basis(i))
        if val:
            coeffs[(i, j)] = val
    for b in alg.basis(window.N):
        if alg.parity(b) == 0 and abs(2 * b.deg2 + f.shift2) <= window.n2:
            try:
                fb = f.value(b)
            except OutsideWindow:
                continue
            if bracket(alg, fb, Element.basis(b)):
                raise ValueError(f"[f({b}), {b}] != 0: f is not super commuting")
    return BilinearMapCoeffs(alg, window, f.sector, f.shift2, coeffs)


# -- serialization ----------------------------------------------------------

def _frac_json(c: Fraction) -> list[str]:
    return [str(c.numerator), str(c.denominator)]


def report_to_dict(rep: SolverReport) -> dict[str, Any]:
    dump = bimap_to_dict if rep.kind == "bider" else linmap_to_dict
    return {
        "kind": rep.kind,
        "gamma": rep.gamma,
        "shift2": rep.shift2,
        "unknowns": rep.unknowns,
        "constraints": rep.constraints,
        "nullspaceDim": rep.nullspace_dim,
        "interiorDim": rep.interior_dim,
        "isInner": rep.is_inner,
        "innerCoordinates": [_frac_json(c) for c in rep.inner_coordinates],
        "warnings": list(rep.warnings),
        "basis": [dump(m) for m in rep.interior_basis],
    }


def report_from_dict(data: Mapping, alg: AlgebraSpec, window: Window) -> SolverReport:
    kind = data["kind"]
    iw = window.interior()
    if kind == "bider":
        basis = [bimap_from_dict(m, alg, iw) for m in data["basis"]]
    else:
        basis = [linmap_from_dict(m, alg, iw) for m in data["basis"]]
    return SolverReport(
        kind=kind, algebra=alg.name, window=window, gamma=int(data["gamma"]),
        shift2=int(data["shift2"]), unknowns=int(data["unknowns"]),
        constraints=int(data["constraints"]), nullspace_dim=int(data["nullspaceDim"]),
        interior_dim=int(data["interiorDim"]), interior_basis=basis,
        is_inner=bool(data["isInner"]),
        inner_coordinates=[Fraction(int(n), int(d)) for n, d in data["innerCoordinates"]],
        warnings=list(data.get("warnings", [])),
    )


def reports_document(alg: AlgebraSpec, window: Window, reports: Iterable[SolverReport]) -> dict[str, Any]:
    return {
        "schemaVersion": SCHEMA_VERSION,
        "algebra": alg.name,
        "window": {"N": window.N, "B": window.B},
        "runs": [report_to_dict(r) for r in reports],
    }


def dumps_reports(alg: AlgebraSpec, window: Window, reports: Iterable[SolverReport]) -> str:
    return json.dumps(reports_document(alg, window, reports), indent=1)


def loads_reports(text: str, alg: AlgebraSpec) -> tuple[Window, list[SolverReport]]:
    doc = json.loads(text)
    if doc.get("schemaVersion") != SCHEMA_VERSION:
        raise ValueError(f"unsupported schemaVersion {doc.get('schemaVersion')!r}")
    window = Window(int(doc["window"]["N"]), int(doc["window"]["B"]))
    return window, [report_from_dict(r, alg, window) for r in doc["runs"]]
