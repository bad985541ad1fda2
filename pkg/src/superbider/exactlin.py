"""
Exact sparse linear algebra over the rationals.

Scalars are :class:`fractions.Fraction`. Matrices are stored as sparse rows;
elimination runs on primitive integer rows (fraction-free cross
multiplication) and only the final reduced form is converted back to
fractions, which keeps intermediate growth in check without ever rounding.

The constraint systems built elsewhere in the package have rational
coefficients, so a kernel dimension computed over Q is also the dimension
over C.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Sequence

Scalar = Fraction


def scalar_normalize(numerator: int, denominator: int) -> Fraction:
    """Reduced rational numerator/denominator with positive denominator.

    >>> scalar_normalize(3, -6)
    Fraction(-1, 2)
    """
    if denominator == 0:
        raise ZeroDivisionError("division by zero")
    return Fraction(int(numerator), int(denominator))


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


@dataclass(frozen=True)
class SparseVector:
    dim: int
    entries: tuple[tuple[int, Fraction], ...] = ()

    def __post_init__(self):
        seen = -1
        for idx, val in self.entries:
            if not 0 <= idx < self.dim:
                raise IndexError(f"index {idx} out of range for dim {self.dim}")
            if idx <= seen:
                raise ValueError("entries must be strictly increasing by index")
            if val == 0:
                raise ValueError("stored zero in sparse vector")
            seen = idx

    @classmethod
    def from_dict(cls, dim: int, data: Mapping[int, object]) -> "SparseVector":
        items = tuple(
            (i, Fraction(v)) for i, v in sorted(data.items()) if v != 0
        )
        return cls(dim, items)

    def to_dict(self) -> dict[int, Fraction]:
        return dict(self.entries)

    def __getitem__(self, idx: int) -> Fraction:
        for i, v in self.entries:
            if i == idx:
                return v
        return Fraction(0)

    def dense(self) -> list[Fraction]:
        out = [Fraction(0)] * self.dim
        for i, v in self.entries:
            out[i] = v
        return out

    def __len__(self):
        return self.dim


@dataclass(frozen=True)
class SparseMatrix:
    """Sparse rational matrix held as a tuple of sorted rows.

    ``rows_data[r]`` is a tuple of ``(col, value)`` pairs in increasing column
    order with no zeros.
    """

    rows: int
    cols: int
    rows_data: tuple[tuple[tuple[int, Fraction], ...], ...]

    def __post_init__(self):
        if len(self.rows_data) != self.rows:
            raise ValueError("row count mismatch")
        for row in self.rows_data:
            seen = -1
            for c, v in row:
                if not 0 <= c < self.cols:
                    raise IndexError(f"column {c} out of range")
                if c <= seen:
                    raise ValueError("duplicate or unsorted column in row")
                if v == 0:
                    raise ValueError("stored zero in sparse matrix")
                seen = c

    @classmethod
    def from_rows(cls, rows: Iterable[Mapping[int, object]], cols: int) -> "SparseMatrix":
        data = []
        for row in rows:
            data.append(tuple(
                (c, Fraction(v)) for c, v in sorted(row.items()) if v != 0
            ))
        return cls(len(data), cols, tuple(data))

    @classmethod
    def from_dense(cls, dense: Sequence[Sequence[object]], cols: int | None = None) -> "SparseMatrix":
        if cols is None:
            cols = len(dense[0]) if dense else 0
        return cls.from_rows(({j: v for j, v in enumerate(r)} for r in dense), cols)

    @classmethod
    def from_entries(cls, rows: int, cols: int,
                     entries: Iterable[tuple[int, int, object]]) -> "SparseMatrix":
        buckets: list[dict[int, Fraction]] = [{} for _ in range(rows)]
        for r, c, v in entries:
            if (c in buckets[r]):
                raise ValueError(f"duplicate position ({r}, {c})")
            buckets[r][c] = Fraction(v)
        return cls.from_rows(buckets, cols)

    @property
    def entries(self) -> list[tuple[int, int, Fraction]]:
        return [(r, c, v) for r, row in enumerate(self.rows_data) for c, v in row]

    def dense(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for r, c, v in self.entries:
            out[r][c] = v
        return out

    def matvec(self, v: SparseVector | Sequence[object]) -> list[Fraction]:
        lookup = v.to_dict() if isinstance(v, SparseVector) else {
            i: Fraction(x) for i, x in enumerate(v) if x != 0}
        return [sum((val * lookup[c] for c, val in row if c in lookup), Fraction(0))
                for row in self.rows_data]


# -- integer row kernels ----------------------------------------------------

def _primitive(row: dict[int, int]) -> dict[int, int]:
    """Divide by the content and make the leading coefficient positive."""
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            break
    lead = row[min(row)]
    if lead < 0:
        g = -g
    if g not in (0, 1):
        row = {c: v // g for c, v in row.items()}
    return row


def _integer_row(row: Sequence[tuple[int, Fraction]]) -> dict[int, int]:
    den = 1
    for _, v in row:
        den = _lcm(den, v.denominator)
    return {c: int(v * den) for c, v in row}


def _eliminate(target: dict[int, int], pivot_row: dict[int, int], col: int) -> dict[int, int]:
    """Clear ``target[col]`` using ``pivot_row`` (fraction-free)."""
    a = target[col]
    b = pivot_row[col]
    g = gcd(a, b)
    a //= g
    b //= g
    out = {c: v * b for c, v in target.items()} if b != 1 else dict(target)
    for c, v in pivot_row.items():
        nv = out.get(c, 0) - a * v
        if nv:
            out[c] = nv
        else:
            out.pop(c, None)
    return _primitive(out) if out else out


def _echelon(int_rows: Iterable[dict[int, int]]) -> dict[int, dict[int, int]]:
    """Stream rows into a (not yet reduced) echelon set keyed by pivot column.

    Short rows go first (stable, so still deterministic): sparse pivots keep
    fill-in low. The reduced form is unique, so row order never changes the
    result of rref.
    """
    pivots: dict[int, dict[int, int]] = {}
    for row in sorted(int_rows, key=len):
        r = row
        while r:
            c = min(r)
            p = pivots.get(c)
            if p is None:
                pivots[c] = _primitive(r)
                break
            r = _eliminate(r, p, c)
    return pivots


def _back_substitute(pivots: dict[int, dict[int, int]]) -> list[tuple[int, dict[int, Fraction]]]:
    cols = sorted(pivots)
    done: dict[int, dict[int, int]] = {}
    for c in reversed(cols):
        r = pivots[c]
        for other in [k for k in sorted(r) if k != c and k in done]:
            if other in r:
                r = _eliminate(r, done[other], other)
        done[c] = r
    out = []
    for c in cols:
        r = done[c]
        lead = r[c]
        out.append((c, {k: Fraction(v, lead) for k, v in sorted(r.items())}))
    return out


def _rref_rows(m: SparseMatrix) -> list[tuple[int, dict[int, Fraction]]]:
    int_rows = (_integer_row(row) for row in m.rows_data if row)
    return _back_substitute(_echelon(int_rows))


def rref(m: SparseMatrix) -> tuple[SparseMatrix, list[int]]:
    """Reduced row echelon form over Q.

    Zero rows are dropped from the returned matrix; the row count of the
    result equals the rank. Pivots are 1 and rows are sorted by pivot column.
    """
    reduced = _rref_rows(m)
    mat = SparseMatrix.from_rows([row for _, row in reduced], m.cols)
    return mat, [c for c, _ in reduced]


def rank(m: SparseMatrix) -> int:
    return len(_echelon(_integer_row(row) for row in m.rows_data if row))


def nullspace(m: SparseMatrix) -> list[SparseVector]:
    """Canonical kernel basis from the free-column parametrization.

    Vector ``t`` has a 1 in the ``t``-th free column, zeros in all other free
    columns, and ``-R[p, f]`` in each pivot column ``p``.
    """
    reduced = _rref_rows(m)
    pivot_cols = {c for c, _ in reduced}
    free = [c for c in range(m.cols) if c not in pivot_cols]
    vecs: dict[int, dict[int, Fraction]] = {f: {f: Fraction(1)} for f in free}
    for pc, row in reduced:
        for c, v in row.items():
            if c != pc:
                vecs[c][pc] = -v
    return [SparseVector.from_dict(m.cols, vecs[f]) for f in free]


def row_space_basis(vectors: Sequence[SparseVector], dim: int) -> list[SparseVector]:
    """Canonical (RREF) basis of the span of ``vectors``."""
    m = SparseMatrix.from_rows((v.to_dict() for v in vectors), dim)
    reduced, _ = rref(m)
    return [SparseVector(dim, row) for row in reduced.rows_data]
