# Structural identities every super-biderivation satisfies, checked on
# solver output and on a table that is not a biderivation.
from superbider import Window, inner_map, make_super_virasoro, solve_bider
from superbider.bimaps import (BilinearMapCoeffs, check_lemma_commutant, check_lemma_selfbracket,
                               even_pairs, quad_sweep)
from superbider.core import center_of_derived

S0 = make_super_virasoro(0)
w = Window(6, 2)
phi = solve_bider(S0, w, 0, 0).solutions[0]

print(quad_sweep(phi, 100, seed=1).summary())
print(check_lemma_selfbracket(phi, even_pairs(S0, 4)).summary())
print(check_lemma_commutant(phi, S0, w).summary())
print("center of the derived algebra:", center_of_derived(S0, 6, 2))

# keep only the even-even values of the bracket map
full = inner_map(S0, w, 1)
ll = BilinearMapCoeffs(S0, w, 0, 0, {k: v for k, v in full.coeffs.items()
                                     if k[0].family == k[1].family == "L"})
rep = quad_sweep(ll, 100, seed=1)
print(rep.summary())
(q, r), *_ = rep.failures
print("  e.g.", tuple(map(str, q)), "->", r)
