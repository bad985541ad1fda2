"""Exact super-biderivation and super commuting map solver for graded Lie superalgebras."""

from .bimaps import (BilinearMapCoeffs, LinearMapCoeffs, Window, eval_bimap, inner_map,
                     quad_residual, residual_left_leibniz, residual_right_leibniz, residual_skew)
from .catalog import load_algebra, make_super_virasoro, make_witt
from .core import (AlgebraSpec, BasisVector, Element, bracket, bv, center_of_derived,
                   skew_residual, super_jacobi_residual)
from .solver import psi_from_linear, solve_bider, solve_commuting

__version__ = "0.1.0"
