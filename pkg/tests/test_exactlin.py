import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from superbider.exactlin import (SparseMatrix, SparseVector, nullspace, rank, rref,
                                 row_space_basis, scalar_normalize)

from oracle import dense_rank


@pytest.mark.parametrize("num,den,expected", [
    (2, 4, Fraction(1, 2)),
    (3, -6, Fraction(-1, 2)),
    (0, 7, Fraction(0, 1)),
])
def test_scalar_normalize(num, den, expected):
    got = scalar_normalize(num, den)
    assert got == expected
    assert got.denominator > 0


def test_scalar_normalize_zero_denominator():
    with pytest.raises(ZeroDivisionError, match="division by zero"):
        scalar_normalize(1, 0)


def test_rref_identity():
    m = SparseMatrix.from_dense([[1, 0], [0, 1]])
    r, piv = rref(m)
    assert r.dense() == [[1, 0], [0, 1]]
    assert piv == [0, 1]


def test_rref_rank_one():
    r, piv = rref(SparseMatrix.from_dense([[2, 4], [1, 2]]))
    assert r.dense() == [[1, 2]]
    assert piv == [0]


def _random_dense(rng, rows, cols, density=0.6):
    return [[Fraction(rng.randint(-5, 5), rng.randint(1, 4)) if rng.random() < density else Fraction(0)
             for _ in range(cols)] for _ in range(rows)]


@pytest.mark.parametrize("seed", range(10))
def test_rref_rank_matches_dense_oracle(seed):
    rng = random.Random(seed)
    dense = _random_dense(rng, 5, 7)
    m = SparseMatrix.from_dense(dense)
    r, piv = rref(m)
    assert len(piv) == dense_rank(dense, 7) == rank(m)


def test_nullspace_full_rank():
    assert nullspace(SparseMatrix.from_dense([[1, 0, 0], [0, 1, 0], [0, 0, 1]])) == []


def test_nullspace_single_relation():
    ns = nullspace(SparseMatrix.from_dense([[1, 1]]))
    assert [v.dense() for v in ns] == [[-1, 1]]


@pytest.mark.parametrize("seed", range(10))
def test_nullspace_dimension_matches_oracle(seed):
    rng = random.Random(100 + seed)
    dense = _random_dense(rng, 6, 9, density=0.4)
    m = SparseMatrix.from_dense(dense)
    ns = nullspace(m)
    assert len(ns) == 9 - dense_rank(dense, 9)
    for v in ns:
        assert all(x == 0 for x in m.matvec(v))


def test_nullspace_canonical_form():
    m = SparseMatrix.from_dense([[1, 2, 0, 3], [0, 0, 1, 4]])
    ns = nullspace(m)
    free = [1, 3]
    for t, v in enumerate(ns):
        d = v.dense()
        assert [d[f] for f in free] == [1 if f == free[t] else 0 for f in free]
    assert [v.dense() for v in ns] == [[-2, 1, 0, 0], [-3, 0, -4, 1]]


def test_row_order_does_not_change_rref():
    dense = _random_dense(random.Random(7), 8, 6)
    a = rref(SparseMatrix.from_dense(dense))
    b = rref(SparseMatrix.from_dense(dense[::-1]))
    assert a == b


def test_row_space_basis_is_normalized():
    vs = [SparseVector.from_dict(3, {0: 2, 2: 4}), SparseVector.from_dict(3, {0: -1, 2: -2})]
    basis = row_space_basis(vs, 3)
    assert [b.dense() for b in basis] == [[1, 0, 2]]


def test_sparse_invariants_rejected():
    with pytest.raises(ValueError):
        SparseVector(3, ((0, Fraction(0)),))
    with pytest.raises(IndexError):
        SparseMatrix.from_rows([{5: 1}], 3)
    with pytest.raises(ValueError):
        SparseMatrix.from_entries(1, 3, [(0, 1, 1), (0, 1, 2)])


small = st.fractions(min_value=-6, max_value=6, max_denominator=5)


@st.composite
def matrices(draw):
    rows = draw(st.integers(0, 6))
    cols = draw(st.integers(1, 7))
    cell = st.one_of(st.just(Fraction(0)), small)
    dense = [[draw(cell) for _ in range(cols)] for _ in range(rows)]
    return SparseMatrix.from_rows(({j: v for j, v in enumerate(r)} for r in dense), cols)


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_kernel_properties(m):
    ns = nullspace(m)
    for v in ns:
        assert all(x == 0 for x in m.matvec(v))
    r, piv = rref(m)
    assert len(piv) + len(ns) == m.cols
    assert rref(r)[0] == r
    assert nullspace(m) == ns
