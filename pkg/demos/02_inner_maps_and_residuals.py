# phi(x, y) = lam [x, y] satisfies both super-Leibniz rules; a symmetric
# table does not.
from fractions import Fraction

from superbider import Window, inner_map, make_super_virasoro
from superbider.bimaps import (BilinearMapCoeffs, eval_bimap, leibniz_sweep, residual_left_leibniz,
                               residual_right_leibniz, residual_skew)
from superbider.core import Element, bv

S0 = make_super_virasoro(0)
w = Window(6, 2)
L = lambda n: bv("L", n)
G = lambda k: bv("G", k)

phi = inner_map(S0, w, Fraction(-3, 2))
print("phi(L_0, G_3) =", eval_bimap(phi, L(0), G(3)))
print("phi(G_3, L_0) =", eval_bimap(phi, G(3), L(0)), "(skew rule)")
print("right rule on (L_0, G_1, G_1):", residual_right_leibniz(phi, L(0), G(1), G(1)))

rep = leibniz_sweep(phi)
print(rep.summary())

# symmetric table phi(L_m, L_n) = L_{m+n} in both orders
Ls = [b for b in S0.basis(6) if b.family == "L"]
table = BilinearMapCoeffs(S0, w, 0, 0, {(i, j): Element.basis(L(i.degree + j.degree))
                                        for i in Ls for j in Ls if abs(i.deg2 + j.deg2) <= 12},
                          canonical=False)
print("skew residual on (L_1, L_2):", residual_skew(table, L(1), L(2)))
print("left rule on (L_0, L_1, L_2):", residual_left_leibniz(table, L(0), L(1), L(2)))
