# Brackets on the centerless super-Virasoro algebras and a check of their axioms.
from fractions import Fraction

from superbider import make_super_virasoro, make_witt
from superbider.core import Element, bracket, bv, jacobi_violations, super_jacobi_residual

S0 = make_super_virasoro(0)           # G_k with k integer
S12 = make_super_virasoro(Fraction(1, 2))  # G_k with k in 1/2 + Z


def E(family, degree, c=1):
    return Element.basis(bv(family, degree), c)


# [L_m, L_n] = (n - m) L_{m+n}
print("[L_1, L_2] =", bracket(S0, E("L", 1), E("L", 2)))
# [L_m, G_k] = (k - m/2) G_{m+k}
print("[L_2, G_3] =", bracket(S0, E("L", 2), E("G", 3)))
# two odd vectors: the bracket is symmetric
print("[G_1/2, G_-1/2] =", bracket(S12, E("G", "1/2"), E("G", "-1/2")))
print("[G_-1/2, G_1/2] =", bracket(S12, E("G", "-1/2"), E("G", "1/2")))

# brackets are bilinear, so elements work too
x = E("L", 1) + E("L", -1, Fraction(1, 3))
print("[L_1 + 1/3 L_-1, G_0] =", bracket(S0, x, E("G", 0)))

print("Jacobi residual on (L_1, G_0, G_0):", super_jacobi_residual(S0, E("L", 1), E("G", 0), E("G", 0)))

# every basis triple up to |degree| 6
for alg in (S0, S12, make_witt()):
    print(f"{alg.name}: {len(jacobi_violations(alg, 6))} axiom violations up to degree 6")
