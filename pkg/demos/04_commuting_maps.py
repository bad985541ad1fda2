# Linear super commuting maps are scalar, and Psi(x, y) = [f(x), y] built
# from one is a super-biderivation.
from superbider import Window, make_super_virasoro, psi_from_linear, solve_commuting
from superbider.bimaps import leibniz_sweep

S0 = make_super_virasoro(0)
w = Window(6, 3)
for sector in (0, 1):
    rep = solve_commuting(S0, w, sector)
    print(f"sector {sector}: kernel {rep.nullspace_dim}, interior {rep.interior_dim}, "
          f"matches the scalar prediction: {rep.is_inner}")

f = solve_commuting(S0, w, 0).solutions[0]
print("f(L_2) =", f.value(next(b for b in S0.basis(2) if str(b) == "L_2")))
psi = psi_from_linear(f)
print(leibniz_sweep(psi).summary())
