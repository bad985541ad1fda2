# Every super-biderivation on a truncation window, read off as an exact kernel.
#
# Coefficients near the edge of the window are under-constrained, so the
# answer is restricted to |degree| <= N - B before it is compared with the
# bracket map.
from fractions import Fraction

from superbider import Window, make_super_virasoro, solve_bider
from superbider.bimaps import describe
from superbider.solver import default_shift_range

w = Window(7, 3)
for alg in (make_super_virasoro(0), make_super_virasoro(Fraction(1, 2))):
    print(f"== {alg.name}, N={w.N}, B={w.B}")
    for gamma in (0, 1):
        for s in default_shift_range(alg):
            rep = solve_bider(alg, w, gamma, s)
            flag = " <-" if rep.interior_dim else ""
            print(f"  gamma={gamma} shift2={s:+d}: {rep.unknowns:5d} unknowns, "
                  f"kernel {rep.nullspace_dim}, interior {rep.interior_dim}{flag}")
    rep = solve_bider(alg, w, 0, 0)
    print("  inner:", rep.is_inner, "coordinate:", rep.inner_coordinates)
    print("  ", describe(rep.interior_basis[0], 3))
