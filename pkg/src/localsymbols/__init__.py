"""Exact local symbols and reciprocity laws on the projective line and plane.

The package computes, in exact rational arithmetic, the multiplicative local
symbols attached to rational functions in factored form: the tame and
two-point symbols on P^1, the three-function symbol and two four-function
symbols at flags (curve, point) on P^2 together with their second-type
(blow-up) variants, the sign and K-theoretic symbols, and checkers that
verify every corresponding reciprocity law as an exact product equal to 1.
A numeric side module validates the iterated path-integral identities that
motivate the symbols.
"""

from fractions import Fraction as BigRational

from .errors import LocalSymbolError
from .functions import FactoredFunction, parse_function
from .ktheory import (
    check_k_first,
    check_k_second,
    check_sign_first,
    check_sign_second,
    k_symbol_first,
    k_symbol_second,
    sign_symbol_first,
    sign_symbol_second,
    tame_along_curve,
)
from .plane import (
    CurveParam,
    LocalData,
    PlaneCurve,
    ProjPoint2,
    SurfaceFunction,
    choose_uniformizer,
    enumerate_sites,
    intersection_multiplicity,
    local_data,
    ord_along_curve,
    parametrize,
    validate_distinct_tangents,
    validate_normal_crossings,
)
from .polynomials import HomPoly, low_degree_irreducible, normalize, parse_poly, rational_roots, resultant, substitute_param
from .projline import (
    Divisor1,
    P1Function,
    ProjPoint1,
    bilocal_symbol,
    check_weil,
    divisor,
    ord_at,
    tame_symbol,
    unit_value,
)
from .scene import Scene, parse_scene
from .symbols import (
    MembraneLimit,
    ReciprocityReport,
    check_four_first,
    check_four_second,
    check_parshin_first,
    check_parshin_second,
    four_bilocal,
    four_symbol_first,
    four_symbol_second,
    membrane_limit_11,
    membrane_limit_12,
    membrane_limit_21,
    membrane_limit_22,
    parshin_refinement,
    parshin_symbol,
    parshin_symbol_second,
    riemann_symmetry_check,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
