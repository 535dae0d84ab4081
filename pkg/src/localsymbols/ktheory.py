"""Sign symbol and K-theoretic four-function symbol via composed tame maps.

The curve-level tame map sends a pair of surface functions to a rational
function on the base curve,

    Tame_C(f_i, f_j) = (-1)^(a_i a_j) (g_i^(a_j) / g_j^(a_i))|_C,

with the sign folded into the constant of the factored representation.  The
point-level tame map then produces a number.  The composite pairs the two
images with the boundary orientation that matches the sign symbol

    (f1, f2, f3, f4)_(C,P) = (-1)^(a1 a2 a3 b4 + a2 a3 a4 b1
                                   + a3 a4 a1 b2 + a4 a1 a2 b3),

so that k_symbol = sign_symbol * four_symbol_first holds exactly at every
site; pairing the images the opposite way would produce the inverse of the
four-function symbol instead.  Second-type variants evaluate the same
composite on the exceptional data (c, d) = (a + b, a) and invert.
"""

from __future__ import annotations

from fractions import Fraction

from .functions import FactoredFunction
from .plane import LocalData, PlaneCurve, ProjPoint2
from .projline import P1Function, tame_symbol
from .symbols import (
    ReciprocityReport,
    _first_type_report,
    _second_type_report,
    blowup_data,
    configure,
    four_first_from_data,
)

# ---------------------------------------------------------------------------
# sign symbol


def sign_exponent(a, b) -> int:
    """sum over i of b_i times the product of the other three a_j."""
    total = 0
    for i in range(4):
        term = b[i]
        for j in range(4):
            if j != i:
                term *= a[j]
        total += term
    return total


def sign_exponent_alternative(a, b) -> int:
    """The other exponent pattern floating around the composite computation:
    sum over i of a_i times the product of the other three b_j.  Kept so the
    test suite can record which pattern the data actually supports."""
    total = 0
    for i in range(4):
        term = a[i]
        for j in range(4):
            if j != i:
                term *= b[j]
        total += term
    return total


def sign_symbol_from_data(data: LocalData) -> Fraction:
    return Fraction(-1 if sign_exponent(data.a, data.b) % 2 else 1)


def sign_symbol_first(
    f1, f2, f3, f4, curve: PlaneCurve, point: ProjPoint2, x=None, param=None
) -> Fraction:
    config = configure((f1, f2, f3, f4), curve, extra_avoid=(point,), x=x, param=param)
    return sign_symbol_from_data(config.data_at(point))


def sign_symbol_second(
    f1, f2, f3, f4, curve: PlaneCurve, point: ProjPoint2, x=None, param=None
) -> Fraction:
    config = configure((f1, f2, f3, f4), curve, extra_avoid=(point,), x=x, param=param)
    return 1 / sign_symbol_from_data(blowup_data(config.data_at(point)))


# ---------------------------------------------------------------------------
# composed tame maps


def tame_image_from_data(data: LocalData, i: int, j: int) -> P1Function:
    sign = -1 if (data.a[i] * data.a[j]) % 2 else 1
    image = (data.restricted[i] ** data.a[j]) * (data.restricted[j] ** -data.a[i])
    if sign < 0:
        image = image * FactoredFunction.constant_function(-1, image.variables)
    return image


def tame_along_curve(f_i, f_j, curve: PlaneCurve, x=None, param=None) -> P1Function:
    """The curve-level tame image of a pair, as a function on P^1 through
    the curve parametrization."""
    config = configure((f_i, f_j), curve, x=x, param=param)
    data = LocalData(curve, None, config.a, (0, 0), config.restricted, None)
    return tame_image_from_data(data, 0, 1)


def k_symbol_from_data(data: LocalData) -> Fraction:
    first = tame_image_from_data(data, 0, 1)
    second = tame_image_from_data(data, 2, 3)
    return tame_symbol(second, first, data.preimage)


def k_symbol_first(
    f1, f2, f3, f4, curve: PlaneCurve, point: ProjPoint2, x=None, param=None
) -> Fraction:
    config = configure((f1, f2, f3, f4), curve, extra_avoid=(point,), x=x, param=param)
    return k_symbol_from_data(config.data_at(point))


def k_symbol_second_from_data(data: LocalData) -> Fraction:
    """Inverse of the first-type symbol evaluated on the exceptional data.

    The first-type symbol is evaluated through its closed form in local
    data, sign * four-function; the raw tame composite cannot be reused
    here because the substituted orders (c, d) are not the vanishing orders
    of the restricted functions themselves."""
    exceptional = blowup_data(data)
    return 1 / (
        sign_symbol_from_data(exceptional) * four_first_from_data(exceptional)
    )


def k_symbol_second(
    f1, f2, f3, f4, curve: PlaneCurve, point: ProjPoint2, x=None, param=None
) -> Fraction:
    config = configure((f1, f2, f3, f4), curve, extra_avoid=(point,), x=x, param=param)
    return k_symbol_second_from_data(config.data_at(point))


def consistency_report(data: LocalData) -> dict:
    """How the composite relates to sign * four-function at one site, and
    which of the two candidate sign-exponent patterns the data supports."""
    k = k_symbol_from_data(data)
    four = four_first_from_data(data)
    sign = sign_symbol_from_data(data)
    quotient = k / four
    alt = Fraction(-1 if sign_exponent_alternative(data.a, data.b) % 2 else 1)
    return {
        "k": k,
        "four": four,
        "sign": sign,
        "consistent": k == sign * four,
        "main_exponent_matches": quotient == sign,
        "alternative_exponent_matches": quotient == alt,
    }


# ---------------------------------------------------------------------------
# reciprocity checkers


def check_sign_first(f1, f2, f3, f4, curve: PlaneCurve, param=None) -> ReciprocityReport:
    return _first_type_report(
        "sign-first", (f1, f2, f3, f4), curve, sign_symbol_from_data, param
    )


def check_sign_second(f1, f2, f3, f4, point: ProjPoint2, params=None) -> ReciprocityReport:
    return _second_type_report(
        "sign-second",
        (f1, f2, f3, f4),
        point,
        lambda data: 1 / sign_symbol_from_data(blowup_data(data)),
        params,
    )


def check_k_first(f1, f2, f3, f4, curve: PlaneCurve, param=None) -> ReciprocityReport:
    return _first_type_report(
        "ksym-first", (f1, f2, f3, f4), curve, k_symbol_from_data, param
    )


def check_k_second(f1, f2, f3, f4, point: ProjPoint2, params=None) -> ReciprocityReport:
    return _second_type_report(
        "ksym-second", (f1, f2, f3, f4), point, k_symbol_second_from_data, params
    )
