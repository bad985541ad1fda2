"""
Homogeneous bilinear and linear maps on a truncation window, the
super-biderivation residuals, and the structural lemma checks.

A bilinear map stores values on canonical basis pairs ``(i, j)`` with
``i <= j`` only; the opposite order is derived from skew-supersymmetry,
``phi(j, i) = -(-1)^{|i||j|} phi(i, j)``. Even self-pairs are forced to zero.

Every residual here refuses to run on an input whose computation would touch
a basis vector outside the window (``Inadmissible``), so a truncated map is
never compared against values it does not know.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Mapping, Sequence

from .core import ZERO, AlgebraSpec, BasisVector, Element, bracket, fmt_deg2, psign


class OutsideWindow(ValueError):
    pass


class Inadmissible(ValueError):
    pass


@dataclass(frozen=True)
class Window:
    """Degrees |d| <= N are in the window; |d| <= N - B is the interior."""

    N: int
    B: int = 0

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("window bound N must be >= 1")
        if not 0 <= self.B < self.N:
            raise ValueError("buffer must satisfy 0 <= B < N")

    @property
    def n2(self) -> int:
        return 2 * self.N

    @property
    def interior2(self) -> int:
        return 2 * (self.N - self.B)

    def contains(self, b: BasisVector) -> bool:
        return abs(b.deg2) <= self.n2

    def in_interior(self, b: BasisVector) -> bool:
        return abs(b.deg2) <= self.interior2

    def interior(self) -> "Window":
        return Window(self.N - self.B, 0)


def _el(x) -> Element:
    return x if isinstance(x, Element) else Element.basis(x)


@dataclass(frozen=True, eq=False)
class BilinearMapCoeffs:
    """Parity-sector ``gamma``, degree-shift ``shift2`` (doubled) bilinear map.

    With ``canonical=False`` the table is keyed by ordered pairs and looked up
    literally; this is only used for externally supplied tables that may
    violate skew-supersymmetry.
    """

    algebra: AlgebraSpec
    window: Window
    gamma: int
    shift2: int
    coeffs: Mapping[tuple[BasisVector, BasisVector], Element] = field(default_factory=dict)
    canonical: bool = True

    def __post_init__(self):
        alg = self.algebra
        clean = {}
        for (i, j), val in self.coeffs.items():
            for b in (i, j):
                alg.validate(b)
                if not self.window.contains(b):
                    raise OutsideWindow(f"{b} outside window")
            pi, pj = alg.parity(i), alg.parity(j)
            if self.canonical:
                if j < i:
                    raise ValueError(f"non-canonical pair ({i}, {j})")
                if i == j and pi == 0 and val:
                    raise ValueError(f"even self-pair ({i}, {i}) must map to zero")
            for k in val:
                alg.validate(k)
                if (k.deg2 != i.deg2 + j.deg2 + self.shift2
                        or alg.parity(k) != (pi + pj + self.gamma) % 2):
                    raise ValueError(f"value at ({i}, {j}) is not homogeneous of the declared type")
                if not self.window.contains(k):
                    raise OutsideWindow(f"value at ({i}, {j}) leaves the window")
            if val:
                clean[(i, j)] = val
        object.__setattr__(self, "coeffs", dict(sorted(clean.items())))

    def __eq__(self, other):
        if not isinstance(other, BilinearMapCoeffs):
            return NotImplemented
        return (self.algebra == other.algebra and self.window == other.window
                and self.gamma == other.gamma and self.shift2 == other.shift2
                and self.canonical == other.canonical and self.coeffs == other.coeffs)

    def value(self, a: BasisVector, b: BasisVector) -> Element:
        if not (self.window.contains(a) and self.window.contains(b)):
            raise OutsideWindow("outside window")
        if abs(a.deg2 + b.deg2 + self.shift2) > self.window.n2:
            raise OutsideWindow("outside window")
        if not self.canonical:
            return self.coeffs.get((a, b), ZERO)
        if a <= b:
            return self.coeffs.get((a, b), ZERO)
        s = -psign(self.algebra.parity(a) * self.algebra.parity(b))
        return s * self.coeffs.get((b, a), ZERO)

    def scaled(self, c) -> "BilinearMapCoeffs":
        return BilinearMapCoeffs(self.algebra, self.window, self.gamma, self.shift2,
                                 {k: c * v for k, v in self.coeffs.items()}, self.canonical)


@dataclass(frozen=True, eq=False)
class LinearMapCoeffs:
    algebra: AlgebraSpec
    window: Window
    sector: int
    shift2: int
    coeffs: Mapping[BasisVector, Element] = field(default_factory=dict)

    def __post_init__(self):
        alg = self.algebra
        for i, val in self.coeffs.items():
            alg.validate(i)
            if not self.window.contains(i):
                raise OutsideWindow(f"{i} outside window")
            for k in val:
                if (k.deg2 != i.deg2 + self.shift2
                        or alg.parity(k) != (alg.parity(i) + self.sector) % 2
                        or not self.window.contains(k)):
                    raise ValueError(f"value at {i} is not homogeneous of the declared type")
        object.__setattr__(self, "coeffs", {k: v for k, v in sorted(self.coeffs.items()) if v})

    def __eq__(self, other):
        if not isinstance(other, LinearMapCoeffs):
            return NotImplemented
        return (self.algebra == other.algebra and self.window == other.window
                and self.sector == other.sector and self.shift2 == other.shift2
                and self.coeffs == other.coeffs)

    def value(self, a: BasisVector) -> Element:
        if not self.window.contains(a) or abs(a.deg2 + self.shift2) > self.window.n2:
            raise OutsideWindow("outside window")
        return self.coeffs.get(a, ZERO)


def eval_linear(f: LinearMapCoeffs, x) -> Element:
    x = _el(x)
    return sum((c * f.value(a) for a, c in x.items()), ZERO)


def identity_map(alg: AlgebraSpec, window: Window, scale=1) -> LinearMapCoeffs:
    return LinearMapCoeffs(alg, window, 0, 0,
                           {b: Element.basis(b, scale) for b in alg.basis(window.N)})


# -- construction and evaluation --------------------------------------------

def canonical_pairs(alg: AlgebraSpec, window: Window) -> list[tuple[BasisVector, BasisVector]]:
    """Canonical basis pairs (i <= j) in the window, even self-pairs excluded."""
    basis = alg.basis(window.N)
    out = []
    for a, i in enumerate(basis):
        for j in basis[a:]:
            if i == j and alg.parity(i) == 0:
                continue
            out.append((i, j))
    return out


def inner_map(alg: AlgebraSpec, window: Window, lam=1) -> BilinearMapCoeffs:
    """phi(x, y) = lam * [x, y] on every canonical pair of the window."""
    lam = Fraction(lam)
    coeffs = {}
    if lam:
        for i, j in canonical_pairs(alg, window):
            if abs(i.deg2 + j.deg2) > window.n2:
                continue
            coeffs[(i, j)] = lam * bracket(alg, Element.basis(i), Element.basis(j))
    return BilinearMapCoeffs(alg, window, 0, 0, coeffs)


def eval_bimap(phi: BilinearMapCoeffs, x, y) -> Element:
    x, y = _el(x), _el(y)
    acc = ZERO
    for a, ca in x.items():
        for b, cb in y.items():
            acc = acc + (ca * cb) * phi.value(a, b)
    return acc


def restrict(phi: BilinearMapCoeffs, bound: int) -> BilinearMapCoeffs:
    """Forget every coefficient touching a degree of magnitude > bound."""
    b2 = 2 * bound
    coeffs = {}
    for (i, j), val in phi.coeffs.items():
        if abs(i.deg2) <= b2 and abs(j.deg2) <= b2:
            kept = Element((k, c) for k, c in val.items() if abs(k.deg2) <= b2)
            if kept:
                coeffs[(i, j)] = kept
    return BilinearMapCoeffs(phi.algebra, Window(bound, 0), phi.gamma, phi.shift2,
                             coeffs, phi.canonical)


# -- residuals --------------------------------------------------------------

def _check_degrees(window: Window, degs: Iterable[int]) -> None:
    n2 = window.n2
    for d in degs:
        if abs(d) > n2:
            raise Inadmissible("inadmissible triple")


def _parity(alg: AlgebraSpec, x: Element) -> int:
    return alg.element_parity(x)


def residual_skew(phi: BilinearMapCoeffs, x, y) -> Element:
    """phi(x, y) + (-1)^{|x||y|} phi(y, x)."""
    x, y = _el(x), _el(y)
    alg = phi.algebra
    s = psign(_parity(alg, x) * _parity(alg, y))
    return eval_bimap(phi, x, y) + s * eval_bimap(phi, y, x)


def left_leibniz_degrees(shift2: int, a: int, b: int, c: int) -> tuple[int, ...]:
    """Every degree touched by the left rule on basis degrees (a, b, c)."""
    return (a, b, c, a + b, b + c + shift2, a + c + shift2, a + b + c + shift2)


def right_leibniz_degrees(shift2: int, a: int, b: int, c: int) -> tuple[int, ...]:
    return (a, b, c, b + c, a + b + shift2, a + c + shift2, a + b + c + shift2)


def _admit(phi, x, y, z, degrees) -> None:
    for a in x:
        for b in y:
            for c in z:
                _check_degrees(phi.window, degrees(phi.shift2, a.deg2, b.deg2, c.deg2))


def residual_left_leibniz(phi: BilinearMapCoeffs, x, y, z) -> Element:
    """phi([x,y],z) - (-1)^{|phi||x|}[x,phi(y,z)] - (-1)^{|y||z|}[phi(x,z),y]."""
    x, y, z = _el(x), _el(y), _el(z)
    alg = phi.algebra
    px, py, pz = _parity(alg, x), _parity(alg, y), _parity(alg, z)
    _admit(phi, x, y, z, left_leibniz_degrees)
    try:
        lhs = eval_bimap(phi, bracket(alg, x, y), z)
        r1 = bracket(alg, x, eval_bimap(phi, y, z))
        r2 = bracket(alg, eval_bimap(phi, x, z), y)
    except OutsideWindow as exc:
        raise Inadmissible("inadmissible triple") from exc
    return lhs - psign(phi.gamma * px) * r1 - psign(py * pz) * r2


def residual_right_leibniz(phi: BilinearMapCoeffs, x, y, z) -> Element:
    """phi(x,[y,z]) - [phi(x,y),z] - (-1)^{(|phi|+|x|)|y|}[y,phi(x,z)]."""
    x, y, z = _el(x), _el(y), _el(z)
    alg = phi.algebra
    px, py = _parity(alg, x), _parity(alg, y)
    _parity(alg, z)
    _admit(phi, x, y, z, right_leibniz_degrees)
    try:
        lhs = eval_bimap(phi, x, bracket(alg, y, z))
        r1 = bracket(alg, eval_bimap(phi, x, y), z)
        r2 = bracket(alg, y, eval_bimap(phi, x, z))
    except OutsideWindow as exc:
        raise Inadmissible("inadmissible triple") from exc
    return lhs - r1 - psign((phi.gamma + px) * py) * r2


def quad_degrees(shift2: int, a: int, b: int, c: int, d: int) -> tuple[int, ...]:
    return (a, b, c, d, a + b, c + d, a + b + shift2, c + d + shift2, a + b + c + d + shift2)


def quad_residual(phi: BilinearMapCoeffs, x, y, u, v) -> Element:
    """[phi(x,y),[u,v]] - (-1)^{|phi|(|x|+|y|)}[[x,y],phi(u,v)].

    Vanishes for every super-biderivation.
    """
    x, y, u, v = _el(x), _el(y), _el(u), _el(v)
    alg = phi.algebra
    px, py = _parity(alg, x), _parity(alg, y)
    _parity(alg, u), _parity(alg, v)
    for a in x:
        for b in y:
            for c in u:
                for d in v:
                    _check_degrees(phi.window, quad_degrees(phi.shift2, a.deg2, b.deg2, c.deg2, d.deg2))
    try:
        left = bracket(alg, eval_bimap(phi, x, y), bracket(alg, u, v))
        right = bracket(alg, bracket(alg, x, y), eval_bimap(phi, u, v))
    except OutsideWindow as exc:
        raise Inadmissible("inadmissible quadruple") from exc
    return left - psign(phi.gamma * (px + py)) * right


# -- lemma verifiers --------------------------------------------------------

@dataclass
class LemmaReport:
    lemma: str
    passed: bool
    checked: int = 0
    skipped: int = 0
    failures: list = field(default_factory=list)
    entries: list = field(default_factory=list)

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (f"{self.lemma}: {status} ({self.checked} checked, {self.skipped} skipped, "
                f"{len(self.failures)} failures)")


def check_lemma_selfbracket(phi: BilinearMapCoeffs, pairs: Sequence[tuple]) -> LemmaReport:
    """[phi(x,y),[x,y]] = 0 whenever |x| + |y| is even."""
    alg = phi.algebra
    rep = LemmaReport("selfbracket", True)
    for x, y in pairs:
        ex, ey = _el(x), _el(y)
        if (alg.element_parity(ex) + alg.element_parity(ey)) % 2:
            rep.skipped += 1
            rep.entries.append(((x, y), None, "hypothesis not met"))
            continue
        try:
            val = eval_bimap(phi, ex, ey)
        except OutsideWindow:
            rep.skipped += 1
            rep.entries.append(((x, y), None, "outside window"))
            continue
        r = bracket(alg, val, bracket(alg, ex, ey))
        rep.checked += 1
        rep.entries.append(((x, y), r, "ok" if not r else "nonzero"))
        if r:
            rep.failures.append(((x, y), r))
    rep.passed = not rep.failures
    return rep


def even_pairs(alg: AlgebraSpec, bound: int) -> list[tuple[BasisVector, BasisVector]]:
    """Canonical basis pairs with |deg| <= bound and even total parity."""
    basis = alg.basis(bound)
    return [(i, j) for a, i in enumerate(basis) for j in basis[a:]
            if (alg.parity(i) + alg.parity(j)) % 2 == 0]


def check_lemma_commutant(phi: BilinearMapCoeffs, alg: AlgebraSpec | None = None,
                          window: Window | None = None) -> LemmaReport:
    """phi(x, y) commutes with the interior whenever [x, y] = 0.

    Pairs are the canonical interior basis pairs of ``window`` (default: the
    map's own window) whose bracket vanishes; ``w`` ranges over interior basis
    vectors with deg(phi(x,y)) + deg(w) inside the window.
    """
    alg = alg or phi.algebra
    window = window or phi.window
    basis = alg.basis(window.N - window.B)
    rep = LemmaReport("commutant", True)
    for a, x in enumerate(basis):
        for y in basis[a:]:
            if alg.bracket_basis(x, y):
                continue
            try:
                val = phi.value(x, y)
            except OutsideWindow:
                rep.skipped += 1
                rep.entries.append(((x, y), None, "outside window"))
                continue
            rep.checked += 1
            bad = ZERO
            for w in basis:
                if abs(x.deg2 + y.deg2 + phi.shift2 + w.deg2) > window.n2:
                    continue
                r = bracket(alg, val, Element.basis(w))
                if r:
                    bad = r
                    break
            rep.entries.append(((x, y), val, "ok" if not bad else "not central"))
            if bad:
                rep.failures.append(((x, y), val))
    rep.passed = not rep.failures
    return rep


def leibniz_sweep(phi: BilinearMapCoeffs, triples: Iterable[tuple] | None = None) -> LemmaReport:
    """Both Leibniz residuals on every admissible basis triple (or the given ones)."""
    alg = phi.algebra
    if triples is None:
        basis = alg.basis(phi.window.N)
        triples = ((x, y, z) for x in basis for y in basis for z in basis)
    rep = LemmaReport("leibniz", True)
    for t in triples:
        for name, fn in (("left", residual_left_leibniz), ("right", residual_right_leibniz)):
            try:
                r = fn(phi, *t)
            except Inadmissible:
                rep.skipped += 1
                continue
            rep.checked += 1
            if r:
                rep.failures.append((name, t, r))
    rep.passed = not rep.failures
    return rep


def random_admissible_quadruples(phi: BilinearMapCoeffs, count: int, rng: random.Random,
                                 max_tries: int = 200_000) -> list[tuple[BasisVector, ...]]:
    basis = phi.algebra.basis(phi.window.N)
    n2 = phi.window.n2
    out = []
    for _ in range(max_tries):
        if len(out) >= count:
            break
        q = tuple(rng.choice(basis) for _ in range(4))
        if all(abs(d) <= n2 for d in quad_degrees(phi.shift2, *(b.deg2 for b in q))):
            out.append(q)
    return out


def quad_sweep(phi: BilinearMapCoeffs, count: int = 100, seed: int = 0) -> LemmaReport:
    rep = LemmaReport("quadrilinear", True)
    for q in random_admissible_quadruples(phi, count, random.Random(seed)):
        r = quad_residual(phi, *q)
        rep.checked += 1
        if r:
            rep.failures.append((q, r))
    rep.passed = not rep.failures and rep.checked > 0
    return rep


# -- coefficient table files ------------------------------------------------

def _bv_json(b: BasisVector) -> list:
    return [b.family, b.deg2]


def _out_json(val: Element) -> list:
    return [[k.family, k.deg2, c.numerator, c.denominator] for k, c in val.items()]


def bimap_to_dict(phi: BilinearMapCoeffs) -> dict[str, Any]:
    return {
        "gamma": phi.gamma,
        "shift2": phi.shift2,
        "entries": [{"i": _bv_json(i), "j": _bv_json(j), "out": _out_json(v)}
                    for (i, j), v in phi.coeffs.items()],
    }


def _parse_out(out) -> Element:
    return Element((BasisVector(f, int(d)), Fraction(int(n), int(q))) for f, d, n, q in out)


def bimap_from_dict(data: Mapping, alg: AlgebraSpec, window: Window,
                    canonical: bool = True) -> BilinearMapCoeffs:
    """Load a coefficient table; canonical tables must list pairs with i <= j."""
    try:
        gamma = int(data["gamma"])
        shift2 = int(data["shift2"])
        coeffs = {}
        for n, ent in enumerate(data["entries"]):
            i = BasisVector(ent["i"][0], int(ent["i"][1]))
            j = BasisVector(ent["j"][0], int(ent["j"][1]))
            if canonical and j < i:
                raise ValueError(f"entries[{n}]: non-canonical pair order ({i}, {j})")
            if (i, j) in coeffs:
                raise ValueError(f"entries[{n}]: duplicate pair ({i}, {j})")
            coeffs[(i, j)] = _parse_out(ent["out"])
    except (KeyError, TypeError, IndexError) as exc:
        raise ValueError(f"malformed coefficient table: {exc!r}") from exc
    return BilinearMapCoeffs(alg, window, gamma, shift2, coeffs, canonical)


def load_bimap(text: str, alg: AlgebraSpec, window: Window, canonical: bool = True) -> BilinearMapCoeffs:
    return bimap_from_dict(json.loads(text), alg, window, canonical)


def dump_bimap(phi: BilinearMapCoeffs) -> str:
    return json.dumps(bimap_to_dict(phi))


def linmap_to_dict(f: LinearMapCoeffs) -> dict[str, Any]:
    return {
        "sector": f.sector,
        "shift2": f.shift2,
        "entries": [{"i": _bv_json(i), "out": _out_json(v)} for i, v in f.coeffs.items()],
    }


def linmap_from_dict(data: Mapping, alg: AlgebraSpec, window: Window) -> LinearMapCoeffs:
    coeffs = {BasisVector(e["i"][0], int(e["i"][1])): _parse_out(e["out"]) for e in data["entries"]}
    return LinearMapCoeffs(alg, window, int(data["sector"]), int(data["shift2"]), coeffs)


def describe(phi: BilinearMapCoeffs, limit: int = 6) -> str:
    parts = [f"phi({i},{j}) = {v!r}" for (i, j), v in list(phi.coeffs.items())[:limit]]
    more = len(phi.coeffs) - limit
    if more > 0:
        parts.append(f"... ({more} more)")
    return "; ".join(parts) + f"  [gamma={phi.gamma}, shift={fmt_deg2(phi.shift2)}]"

