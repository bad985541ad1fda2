"""
Graded Lie superalgebras given by structure-constant rules.

Degrees are carried as doubled integers (``deg2``) so that integer and
half-integer lattices share a single representation: ``L_3`` has
``deg2 == 6`` and ``G_{1/2}`` has ``deg2 == 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, NamedTuple, Sequence

from .exactlin import SparseMatrix, nullspace

EVEN = 0
ODD = 1


class AlgebraError(ValueError):
    pass


def psign(p: int) -> int:
    """(-1)**p for a parity exponent."""
    return -1 if p & 1 else 1


def to_deg2(value) -> int:
    """Doubled degree of an integer or half-integer (int, Fraction or str)."""
    v = Fraction(value)
    d2 = 2 * v
    if d2.denominator != 1:
        raise ValueError(f"{value!r} is not a half-integer")
    return int(d2)


def fmt_deg2(deg2: int) -> str:
    return str(deg2 // 2) if deg2 % 2 == 0 else f"{deg2}/2"


class BasisVector(NamedTuple):
    family: str
    deg2: int

    @property
    def degree(self) -> Fraction:
        return Fraction(self.deg2, 2)

    def __str__(self):
        return f"{self.family}_{fmt_deg2(self.deg2)}"


def bv(family: str, degree) -> BasisVector:
    """``bv("G", "1/2")`` is G_{1/2}."""
    return BasisVector(family, to_deg2(degree))


class Element:
    """Finite sparse linear combination of basis vectors.

    Treated as immutable. Terms iterate in canonical (family, degree) order.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[BasisVector, object] | Iterable[tuple[BasisVector, object]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[BasisVector, Fraction] = {}
        for b, c in items:
            c = Fraction(c)
            if c:
                acc[b] = acc.get(b, 0) + c
        self._terms = {b: acc[b] for b in sorted(acc) if acc[b]}

    @classmethod
    def basis(cls, b: BasisVector, coeff=1) -> "Element":
        return cls({b: coeff})

    @property
    def terms(self) -> dict[BasisVector, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coeff(self, b: BasisVector) -> Fraction:
        return self._terms.get(b, Fraction(0))

    def support(self) -> list[BasisVector]:
        return list(self._terms)

    def __iter__(self) -> Iterator[BasisVector]:
        return iter(self._terms)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, Element):
            return self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self._terms.items()))

    def __add__(self, other: "Element") -> "Element":
        if not isinstance(other, Element):
            if other == 0:
                return self
            return NotImplemented
        return Element(list(self._terms.items()) + list(other._terms.items()))

    __radd__ = __add__

    def __neg__(self) -> "Element":
        return Element({b: -c for b, c in self._terms.items()})

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def __mul__(self, scalar) -> "Element":
        s = Fraction(scalar)
        return Element({b: s * c for b, c in self._terms.items()})

    __rmul__ = __mul__

    def __repr__(self):
        if not self._terms:
            return "0"
        parts = []
        for b, c in self._terms.items():
            parts.append(f"{c}*{b}")
        return " + ".join(parts)


ZERO = Element()


# -- algebra specification --------------------------------------------------

@dataclass(frozen=True)
class Family:
    symbol: str
    parity: int
    offset2: int  # doubled degree offset; only its value mod 2 matters


Poly = tuple[tuple[Fraction, int, int], ...]


def make_poly(terms: Iterable[tuple[object, int, int]]) -> Poly:
    """Canonical polynomial in (m, n): like terms merged, zeros dropped."""
    acc: dict[tuple[int, int], Fraction] = {}
    for c, pm, pn in terms:
        if pm < 0 or pn < 0:
            raise ValueError("negative exponent in structure polynomial")
        acc[pm, pn] = acc.get((pm, pn), Fraction(0)) + Fraction(c)
    return tuple((acc[k], k[0], k[1]) for k in sorted(acc) if acc[k])


def eval_poly(poly: Poly, m: Fraction, n: Fraction) -> Fraction:
    return sum((c * m ** pm * n ** pn for c, pm, pn in poly), Fraction(0))


@dataclass(frozen=True)
class Rule:
    """``[left_m, right_n] = poly(m, n) * result_{m+n}``."""

    left: str
    right: str
    result: str
    poly: Poly


@dataclass(frozen=True)
class AlgebraSpec:
    name: str
    families: tuple[Family, ...]
    rules: tuple[Rule, ...]
    _fam: dict = field(default_factory=dict, init=False, repr=False, compare=False)
    _rule: dict = field(default_factory=dict, init=False, repr=False, compare=False)
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "families", tuple(self.families))
        object.__setattr__(self, "rules", tuple(self.rules))
        for f in self.families:
            if f.symbol in self._fam:
                raise AlgebraError(f"duplicate family {f.symbol!r}")
            if f.parity not in (EVEN, ODD):
                raise AlgebraError(f"family {f.symbol!r}: parity must be 0 or 1")
            self._fam[f.symbol] = f
        for r in self.rules:
            for s in (r.left, r.right, r.result):
                if s not in self._fam:
                    raise AlgebraError(f"rule [{r.left},{r.right}] -> {r.result}: unknown family {s!r}")
            key = (r.left, r.right)
            if key in self._rule:
                raise AlgebraError(f"rule [{r.left},{r.right}] listed twice")
            self._rule[key] = r

    # -- metadata

    def family(self, symbol: str) -> Family:
        try:
            return self._fam[symbol]
        except KeyError:
            raise AlgebraError("basis vector not in algebra") from None

    @property
    def is_closed(self) -> bool:
        """True when every ordered family pair is covered by a rule or its reverse."""
        syms = [f.symbol for f in self.families]
        return all((a, b) in self._rule or (b, a) in self._rule for a in syms for b in syms)

    def validate(self, b: BasisVector) -> None:
        f = self._fam.get(b.family)
        if f is None or (b.deg2 - f.offset2) % 2:
            raise AlgebraError("basis vector not in algebra")

    def parity(self, b: BasisVector) -> int:
        return self.family(b.family).parity

    def element_parity(self, x: Element) -> int:
        """Parity of a parity-homogeneous element (zero counts as even)."""
        ps = {self.parity(b) for b in x}
        if len(ps) > 1:
            raise AlgebraError("parity-inhomogeneous element")
        return ps.pop() if ps else EVEN

    def basis(self, bound) -> list[BasisVector]:
        """All basis vectors with |degree| <= bound, canonically ordered."""
        b2 = to_deg2(bound)
        out = []
        for f in self.families:
            start = -b2 + ((-b2 - f.offset2) % 2)
            out.extend(BasisVector(f.symbol, d) for d in range(start, b2 + 1, 2))
        return sorted(out)

    # -- bracket

    def bracket_basis(self, a: BasisVector, b: BasisVector) -> tuple[tuple[BasisVector, Fraction], ...]:
        key = (a, b)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        self.validate(a)
        self.validate(b)
        out: tuple[tuple[BasisVector, Fraction], ...] = ()
        rule = self._rule.get((a.family, b.family))
        if rule is not None:
            c = eval_poly(rule.poly, a.degree, b.degree)
            if c:
                out = ((BasisVector(rule.result, a.deg2 + b.deg2), c),)
        else:
            rev = self._rule.get((b.family, a.family))
            if rev is not None:
                c = eval_poly(rev.poly, b.degree, a.degree)
                if c:
                    s = -psign(self.parity(a) * self.parity(b))
                    out = ((BasisVector(rev.result, a.deg2 + b.deg2), s * c),)
        self._cache[key] = out
        return out


def bracket(alg: AlgebraSpec, x: Element, y: Element) -> Element:
    acc: dict[BasisVector, Fraction] = {}
    for a, ca in x.items():
        for b, cb in y.items():
            for e, c in alg.bracket_basis(a, b):
                acc[e] = acc.get(e, 0) + ca * cb * c
    for b in list(x) + list(y):
        alg.validate(b)
    return Element(acc)


def _el(x) -> Element:
    return x if isinstance(x, Element) else Element.basis(x)


def skew_residual(alg: AlgebraSpec, x, y) -> Element:
    """[x,y] + (-1)^{|x||y|} [y,x]; zero iff skew-supersymmetry holds on the pair."""
    x, y = _el(x), _el(y)
    px, py = alg.element_parity(x), alg.element_parity(y)
    return bracket(alg, x, y) + psign(px * py) * bracket(alg, y, x)


def super_jacobi_residual(alg: AlgebraSpec, x, y, z) -> Element:
    """[x,[y,z]] - [[x,y],z] - (-1)^{|x||y|} [y,[x,z]]."""
    x, y, z = _el(x), _el(y), _el(z)
    px, py = alg.element_parity(x), alg.element_parity(y)
    alg.element_parity(z)
    return (bracket(alg, x, bracket(alg, y, z))
            - bracket(alg, bracket(alg, x, y), z)
            - psign(px * py) * bracket(alg, y, bracket(alg, x, z)))


def jacobi_violations(alg: AlgebraSpec, max_degree) -> list[tuple[str, tuple[BasisVector, ...], Element]]:
    """Every basis pair/triple with |degree| <= max_degree whose residual is nonzero.

    Works on basis-level structure constants directly; agrees term for term
    with skew_residual / super_jacobi_residual.
    """
    basis = alg.basis(max_degree)
    par = {b: alg.parity(b) for b in basis}
    br = alg.bracket_basis
    bad = []
    for x in basis:
        for y in basis:
            acc: dict[BasisVector, Fraction] = {}
            for e, c in br(x, y):
                acc[e] = acc.get(e, 0) + c
            s = psign(par[x] * par[y])
            for e, c in br(y, x):
                acc[e] = acc.get(e, 0) + s * c
            if any(acc.values()):
                bad.append(("skew", (x, y), Element(acc)))
    for x in basis:
        for y in basis:
            s = psign(par[x] * par[y])
            xy = br(x, y)
            for z in basis:
                acc = {}
                for e, c in br(y, z):
                    for f, d in br(x, e):
                        acc[f] = acc.get(f, 0) + c * d
                for e, c in xy:
                    for f, d in br(e, z):
                        acc[f] = acc.get(f, 0) - c * d
                for e, c in br(x, z):
                    for f, d in br(y, e):
                        acc[f] = acc.get(f, 0) - s * c * d
                if any(acc.values()):
                    bad.append(("jacobi", (x, y, z), Element(acc)))
    return bad


def center_of_derived(alg: AlgebraSpec, window, buffer=0) -> list[Element]:
    """Basis of the elements supported on |deg| <= window - buffer that commute
    with every basis vector w with |deg w| <= window (whenever the bracket
    degree stays inside the window)."""
    n2 = to_deg2(window)
    inner = alg.basis(Fraction(n2, 2) - Fraction(buffer))
    outer = alg.basis(window)
    col = {b: i for i, b in enumerate(inner)}
    rows: dict[tuple[BasisVector, BasisVector], dict[int, Fraction]] = {}
    for w in outer:
        for b in inner:
            if abs(b.deg2 + w.deg2) > n2:
                continue
            for e, c in alg.bracket_basis(b, w):
                row = rows.setdefault((w, e), {})
                row[col[b]] = row.get(col[b], 0) + c
    mat = SparseMatrix.from_rows(rows.values(), len(inner))
    return [Element({inner[i]: v for i, v in vec.entries}) for vec in nullspace(mat)]


def parse_basis(text: str) -> BasisVector:
    """``"G_1/2"`` or ``"L_-3"`` -> BasisVector."""
    fam, _, deg = text.partition("_")
    if not fam or not deg:
        raise ValueError(f"cannot parse basis vector {text!r}")
    return bv(fam, deg)


def elements_in_window(elems: Sequence[Element], bound2: int) -> bool:
    return all(abs(b.deg2) <= bound2 for e in elems for b in e)
