import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from superbider.bimaps import (BilinearMapCoeffs, Inadmissible, OutsideWindow, Window,
                               bimap_from_dict, bimap_to_dict, check_lemma_commutant,
                               check_lemma_selfbracket, dump_bimap, eval_bimap, even_pairs,
                               inner_map, leibniz_sweep, load_bimap, quad_residual, quad_sweep,
                               residual_left_leibniz, residual_right_leibniz, residual_skew,
                               restrict)
from superbider.catalog import load_algebra, make_super_virasoro, make_witt
from superbider.core import Element, bracket, bv

S0 = make_super_virasoro(0)
S12 = make_super_virasoro(Fraction(1, 2))
WITT = make_witt()
W6 = Window(6, 2)


def E(family, degree, coeff=1):
    return Element.basis(bv(family, degree), coeff)


def L(n):
    return bv("L", n)


def G(k):
    return bv("G", k)


def symmetric_table(window=W6):
    """phi(L_m, L_n) = L_{m+n} on every ordered pair: a literal, non-skew table."""
    basis = [b for b in S0.basis(window.N) if b.family == "L"]
    coeffs = {(i, j): Element.basis(L(i.degree + j.degree)) for i in basis for j in basis
              if abs(i.deg2 + j.deg2) <= window.n2}
    return BilinearMapCoeffs(S0, window, 0, 0, coeffs, canonical=False)


# -- window -----------------------------------------------------------------

def test_window_invariants():
    w = Window(8, 3)
    assert w.interior() == Window(5, 0)
    assert w.contains(G("-8")) and not w.contains(G(9))
    assert w.in_interior(L(5)) and not w.in_interior(L(6))
    for n, b in [(0, 0), (3, 3), (3, -1)]:
        with pytest.raises(ValueError):
            Window(n, b)


# -- inner maps and evaluation ----------------------------------------------

def test_inner_map_examples():
    assert eval_bimap(inner_map(S0, W6, 2), L(0), G(3)) == E("G", 3, 6)
    assert eval_bimap(inner_map(S0, W6, 1), G(1), G(2)) == E("L", 3, 2)
    assert inner_map(S0, W6, 0).coeffs == {}


def test_eval_skew_signs():
    phi = inner_map(S0, W6, 1)
    assert eval_bimap(phi, L(1), L(2)) == E("L", 3)
    assert eval_bimap(phi, L(2), L(1)) == E("L", 3, -1)
    single = BilinearMapCoeffs(S0, W6, 0, 0, {(G(1), G(2)): E("L", 3)})
    assert eval_bimap(single, G(2), G(1)) == E("L", 3)
    mixed = BilinearMapCoeffs(S0, W6, 0, 0, {(G(1), L(2)): E("G", 3)})
    assert eval_bimap(mixed, L(2), G(1)) == E("G", 3, -1)


def test_eval_outside_window():
    phi = inner_map(S0, W6, 1)
    with pytest.raises(OutsideWindow, match="outside window"):
        eval_bimap(phi, L(7), L(0))
    with pytest.raises(OutsideWindow, match="outside window"):
        eval_bimap(phi, L(4), L(4))


def test_storage_invariants():
    with pytest.raises(ValueError, match="non-canonical"):
        BilinearMapCoeffs(S0, W6, 0, 0, {(L(2), L(1)): E("L", 3)})
    with pytest.raises(ValueError, match="even self-pair"):
        BilinearMapCoeffs(S0, W6, 0, 0, {(L(1), L(1)): E("L", 2)})
    with pytest.raises(ValueError, match="homogeneous"):
        BilinearMapCoeffs(S0, W6, 0, 0, {(L(1), L(2)): E("L", 4)})
    with pytest.raises(ValueError, match="homogeneous"):
        BilinearMapCoeffs(S0, W6, 0, 0, {(L(1), L(2)): E("G", 3)})
    # odd self-pairs are free
    BilinearMapCoeffs(S0, W6, 0, 0, {(G(1), G(1)): E("L", 2, 7)})


def test_restrict_forgets_shell():
    phi = restrict(inner_map(S0, Window(8, 3), 1), 5)
    assert phi == inner_map(S0, Window(5, 0), 1)


# -- skew residual ----------------------------------------------------------

def test_residual_skew_examples():
    phi = inner_map(S0, W6, 3)
    assert residual_skew(phi, L(1), L(2)) == 0
    assert residual_skew(phi, G(0), G(0)) == 0
    assert residual_skew(symmetric_table(), L(1), L(2)) == E("L", 3, 2)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from([S0, S12]), st.data(), st.fractions(max_denominator=5).filter(lambda q: abs(q) < 9))
def test_sign_bookkeeping(alg, data, lam):
    phi = inner_map(alg, Window(3, 0), lam)
    basis = alg.basis(1)
    x = data.draw(st.sampled_from(basis))
    y = data.draw(st.sampled_from(basis))
    assert residual_skew(phi, x, y) == 0


# -- Leibniz residuals ------------------------------------------------------

def test_left_rule_on_symmetric_table():
    # phi([L_0,L_1],L_2) = L_3;  [L_0, phi(L_1,L_2)] = 3 L_3;  [phi(L_0,L_2), L_1] = -L_3
    assert residual_left_leibniz(symmetric_table(), L(0), L(1), L(2)) == E("L", 3, -1)


def test_zero_map_residuals():
    zero = inner_map(S0, W6, 0)
    assert residual_left_leibniz(zero, L(0), G(1), G(2)) == 0
    assert residual_right_leibniz(zero, G(1), L(2), G(-1)) == 0


@pytest.mark.parametrize("n", [-2, -1, 1, 2, 3])
def test_right_rule_l0_gn_g0(n):
    lam = Fraction(5, 2)
    phi = inner_map(S0, W6, lam)
    # phi(L_0, [G_n, G_0]) = phi(L_0, 2L_n) = 2 n lam L_n
    assert eval_bimap(phi, L(0), bracket(S0, E("G", n), E("G", 0))) == E("L", n, 2 * n * lam)
    assert residual_right_leibniz(phi, L(0), G(n), G(0)) == 0


def test_right_rule_l0_g1_g1():
    lam = Fraction(-3, 2)
    phi = inner_map(S0, W6, lam)
    # [G_1, G_1] = 2 L_2 and [L_0, L_2] = 2 L_2
    assert eval_bimap(phi, L(0), bracket(S0, E("G", 1), E("G", 1))) == E("L", 2, 4 * lam)
    assert residual_right_leibniz(phi, L(0), G(1), G(1)) == 0


def test_inadmissible_triple():
    phi = inner_map(S0, W6, 1)
    with pytest.raises(Inadmissible, match="inadmissible triple"):
        residual_left_leibniz(phi, L(4), L(3), L(0))
    with pytest.raises(Inadmissible):
        residual_right_leibniz(phi, L(0), G(5), G(2))


@pytest.mark.parametrize("alg", [S0, S12, WITT], ids=lambda a: a.name)
def test_inner_leibniz_random_sweep(alg):
    phi = inner_map(alg, Window(6, 0), Fraction(-7, 3))
    basis = alg.basis(6)
    rng = random.Random(alg.name)
    triples = []
    while len(triples) < 600:
        t = tuple(rng.choice(basis) for _ in range(3))
        d = [b.deg2 for b in t]
        if abs(sum(d)) <= 12 and abs(d[0] + d[1]) <= 12 and abs(d[1] + d[2]) <= 12 and abs(d[0] + d[2]) <= 12:
            triples.append(t)
    rep = leibniz_sweep(phi, triples)
    assert rep.passed
    assert rep.checked >= 1000


def test_solver_like_map_breaks_leibniz():
    # doubling the odd-odd values breaks the rules
    phi = inner_map(S0, W6, 1)
    coeffs = {k: (2 * v if S0.parity(k[0]) and S0.parity(k[1]) else v) for k, v in phi.coeffs.items()}
    bad = BilinearMapCoeffs(S0, W6, 0, 0, coeffs)
    assert not leibniz_sweep(restrict(bad, 3)).passed


# -- quadrilinear lemma -----------------------------------------------------

def test_quad_examples():
    assert quad_residual(inner_map(S0, W6, 3), L(0), L(1), L(0), L(2)) == 0
    table = symmetric_table()
    # [L_1,[L_1,L_3]] - [[L_0,L_1],L_4] = 6 L_5 - 3 L_5
    assert quad_residual(table, L(0), L(1), L(1), L(3)) == E("L", 5, 3)
    # this quadruple happens to cancel: [L_1, L_5] both times
    assert quad_residual(table, L(0), L(1), L(2), L(3)) == 0


def test_quad_sweep_detects_non_biderivation():
    phi = inner_map(S0, W6, 1)
    lonly = BilinearMapCoeffs(S0, W6, 0, 0, {k: v for k, v in phi.coeffs.items()
                                            if k[0].family == k[1].family == "L"})
    rep = quad_sweep(lonly, 100, seed=0)
    assert not rep.passed and rep.checked == 100


@pytest.mark.parametrize("lam", [0, 1, Fraction(-3, 2)])
@pytest.mark.parametrize("alg", [S0, S12], ids=lambda a: a.name)
def test_quad_sweep_inner(alg, lam):
    rep = quad_sweep(inner_map(alg, W6, lam), 100, seed=3)
    assert rep.passed and rep.checked == 100


# -- self-bracket and commutant lemmas --------------------------------------

def test_selfbracket_examples():
    phi = inner_map(S0, W6, 1)
    rep = check_lemma_selfbracket(phi, [(L(1), L(2)), (G(0), G(1))])
    assert rep.passed and rep.checked == 2
    rep = check_lemma_selfbracket(inner_map(S0, W6, 0), even_pairs(S0, 3))
    assert rep.passed
    rep = check_lemma_selfbracket(phi, [(L(1), G(2))])
    assert rep.checked == 0 and rep.skipped == 1
    assert rep.entries[0][2] == "hypothesis not met"


def test_selfbracket_failure():
    # degree shift 1 (shift2 = 2): [phi(L_1,L_2), [L_1,L_2]] = [L_4, L_3] = -L_7
    phi = BilinearMapCoeffs(S0, Window(8, 0), 0, 2, {(L(1), L(2)): E("L", 4)})
    rep = check_lemma_selfbracket(phi, [(L(1), L(2))])
    assert not rep.passed


def test_commutant_inner():
    rep = check_lemma_commutant(inner_map(S0, Window(8, 3), 2))
    assert rep.passed and rep.checked > 0
    assert all(val == 0 for _, val, _ in rep.entries if val is not None)


def test_commutant_on_abelian_algebra():
    ab = load_algebra('{"name": "ab", "families": [{"symbol": "L", "parity": 0, "offset2": 0},'
                      ' {"symbol": "G", "parity": 1, "offset2": 0}], "rules": []}')
    w = Window(4, 1)
    interior = ab.basis(3)
    npairs = len(interior) * (len(interior) + 1) // 2
    phi = BilinearMapCoeffs(ab, w, 0, 0, {(L(0), L(1)): E("L", 1, 5)})
    rep = check_lemma_commutant(phi)
    assert rep.passed and rep.checked + rep.skipped == npairs


def test_commutant_failure():
    # phi(L_1, L_1) is forced to 0, so pick a commuting odd-even pair in a
    # crafted algebra where [L, G] = 0 and phi(L_0, G_0) = G_0 is not central
    alg = load_algebra({"name": "lg0", "families": [{"symbol": "L", "parity": 0, "offset2": 0},
                                                    {"symbol": "G", "parity": 1, "offset2": 0}],
                        "rules": [{"left": "L", "right": "L", "result": "L", "poly": [[1, 1, 0, 1], [-1, 1, 1, 0]]},
                                  {"left": "G", "right": "G", "result": "L", "poly": [[2, 1, 0, 0]]}]})
    phi = BilinearMapCoeffs(alg, Window(4, 1), 1, 0, {(G(0), L(0)): E("L", 0)})
    rep = check_lemma_commutant(phi)
    assert not rep.passed


# -- file format ------------------------------------------------------------

def test_bimap_file_round_trip():
    phi = inner_map(S12, W6, Fraction(-3, 2))
    assert load_bimap(dump_bimap(phi), S12, W6) == phi


def test_bimap_loader_rejects_non_canonical_order():
    doc = {"gamma": 0, "shift2": 0, "entries": [{"i": ["L", 4], "j": ["L", 2], "out": [["L", 6, 1, 1]]}]}
    with pytest.raises(ValueError, match="non-canonical"):
        bimap_from_dict(doc, S0, W6)
    with pytest.raises(ValueError, match="malformed"):
        load_bimap(json.dumps({"gamma": 0}), S0, W6)


def test_bimap_dict_shape():
    d = bimap_to_dict(BilinearMapCoeffs(S0, W6, 0, 0, {(G(1), G(2)): E("L", 3, Fraction(2, 3))}))
    assert d == {"gamma": 0, "shift2": 0,
                 "entries": [{"i": ["G", 2], "j": ["G", 4], "out": [["L", 6, 2, 3]]}]}
