"""Local symbols on a surface and their reciprocity checkers.

All symbols are computed on cancelled restrictions: with a_k = ord_C(f_k)
and x the canonical uniformizer at C, the functions g_k = x^(-a_k) f_k
restrict to honest nonzero rational functions on C, pulled back to P^1
through the curve parametrization.  The identities sum(a_i D_i) = 0 and
sum(b_i D_i) = 0 make every exponent pattern below a unit at the site, so
each symbol is an exact nonzero rational.

Three-function symbol at a flag (C, P), with determinant exponents

    D1 = a2 b3 - a3 b2,  D2 = a3 b1 - a1 b3,  D3 = a1 b2 - a2 b1,
    K  = a1 a2 b3 + a2 a3 b1 + a3 a1 b2 + b1 b2 a3 + b2 b3 a1 + b3 b1 a2:

    {f1, f2, f3}_(C,P) = (-1)^K (g1^D1 g2^D2 g3^D3)(P).

Four-function symbols, with e12 = a1 b2 - b1 a2 and e34 = a3 b4 - b3 a4:

    {f1, f2, f3, f4}^(1) = (-1)^(e12 e34)
        (g1^a2 / g2^a1)^e34 / (g3^a4 / g4^a3)^e12  at P.

The second-type symbols substitute (c, d) = (a + b, a), the local data on
the exceptional curve of the blow-up at P, and invert; no blow-up is ever
constructed.  Two-point (bi-local) refinements carry a base point Q on C
away from every site; their Q-dependence cancels in full site products.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    BasePointOnDivisor,
    CoincidentPoints,
    InternalInconsistency,
    PointNotOnCurve,
    UniformizerThroughPoint,
    ValidationError,
)
from .functions import power_product
from .plane import (
    CurveParam,
    Diagnostics,
    LocalData,
    PlaneCurve,
    ProjPoint2,
    SurfaceFunction,
    choose_uniformizer,
    components_through,
    enumerate_sites,
    parametrize,
    restrict_to_curve,
    validate_distinct_tangents,
    validate_normal_crossings,
)
from .projline import P1Function, ProjPoint1, bilocal_symbol, ord_at, unit_value

# ---------------------------------------------------------------------------
# exponent patterns


def parshin_exponents(a, b) -> tuple[int, int, int]:
    a1, a2, a3 = a
    b1, b2, b3 = b
    return (a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1)


def parshin_sign_exponent(a, b) -> int:
    a1, a2, a3 = a
    b1, b2, b3 = b
    return (
        a1 * a2 * b3
        + a2 * a3 * b1
        + a3 * a1 * b2
        + b1 * b2 * a3
        + b2 * b3 * a1
        + b3 * b1 * a2
    )


def cross_determinant(a_i: int, b_i: int, a_j: int, b_j: int) -> int:
    return a_i * b_j - b_i * a_j


def blowup_data(data: LocalData) -> LocalData:
    """Local data at the exceptional flag: (c, d) = (a + b, a), same
    restricted functions and preimage."""
    return LocalData(
        data.curve,
        data.point,
        tuple(x + y for x, y in zip(data.a, data.b)),
        tuple(data.a),
        data.restricted,
        data.preimage,
    )


def _signed(value: Fraction, exponent: int) -> Fraction:
    return -value if exponent % 2 else value


def _unit_product(data: LocalData, exponents, point: ProjPoint1) -> Fraction:
    combo = power_product(data.restricted, exponents)
    return unit_value(combo, point)


# ---------------------------------------------------------------------------
# membrane limits


@dataclass(frozen=True)
class MembraneLimit:
    """Closed-form limit of one torus-family iterated integral.

    kind (1,1): integer payload, the coefficient of (2 pi i)^2.
    kind (1,2): a sign, exp of the half-period parity.
    kind (2,1), (2,2): an exact nonzero rational (a bi-local symbol power).
    """

    kind: tuple[int, int]
    payload: int | Fraction


def membrane_limit_11(data: LocalData, i: int = 0, j: int = 1) -> MembraneLimit:
    return MembraneLimit((1, 1), data.a[j] * data.b[i])


def membrane_antisymmetric_11(data: LocalData, i: int = 0, j: int = 1) -> int:
    """The antisymmetrized (1,1) payload a_j b_i - a_i b_j."""
    return data.a[j] * data.b[i] - data.a[i] * data.b[j]


def membrane_limit_12(data: LocalData, i: int = 0, j: int = 1, k: int = 2) -> MembraneLimit:
    parity = (data.a[j] * data.a[k] * data.b[i]) % 2
    return MembraneLimit((1, 2), Fraction(-1 if parity else 1))


def membrane_limit_21(
    data: LocalData, q_preimage: ProjPoint1, i: int = 0, j: int = 1, k: int = 2
) -> MembraneLimit:
    _require_admissible_base(data, q_preimage)
    value = bilocal_symbol(
        data.restricted[j], data.restricted[k], data.preimage, q_preimage
    ) ** (-data.a[i])
    return MembraneLimit((2, 1), value)


def membrane_limit_22(
    data: LocalData,
    q_preimage: ProjPoint1,
    i: int = 0,
    j: int = 1,
    k: int = 2,
    l: int = 3,
) -> MembraneLimit:
    _require_admissible_base(data, q_preimage)
    value = bilocal_symbol(
        data.restricted[i], data.restricted[k], data.preimage, q_preimage
    ) ** (-data.a[j] * data.a[l])
    return MembraneLimit((2, 2), value)


def _require_admissible_base(data: LocalData, q_preimage: ProjPoint1) -> None:
    if q_preimage == data.preimage:
        raise CoincidentPoints("base point coincides with the point of interest")
    for r in data.restricted:
        if ord_at(r, q_preimage) != 0:
            raise BasePointOnDivisor(
                "a restricted function is not a unit at the base point"
            )


# ---------------------------------------------------------------------------
# symbols from local data


def parshin_from_data(data: LocalData) -> Fraction:
    exponents = parshin_exponents(data.a, data.b)
    value = _unit_product(data, exponents, data.preimage)
    return _signed(value, parshin_sign_exponent(data.a, data.b))


def parshin_refinement_from_data(data: LocalData, q_preimage: ProjPoint1) -> Fraction:
    """Product of the three (1,2)- and three (2,1)-limits in cyclic order;
    cross-checked against the closed form (-1)^K (g^D)(P) / (g^D)(Q)."""
    from_limits = Fraction(1)
    for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        from_limits *= membrane_limit_12(data, i, j, k).payload
        from_limits *= membrane_limit_21(data, q_preimage, i, j, k).payload
    exponents = parshin_exponents(data.a, data.b)
    closed = _signed(
        _unit_product(data, exponents, data.preimage)
        / _unit_product(data, exponents, q_preimage),
        parshin_sign_exponent(data.a, data.b),
    )
    if from_limits != closed:
        raise InternalInconsistency(
            f"refinement limit product {from_limits} != closed form {closed}"
        )
    return closed


def four_first_from_data(data: LocalData) -> Fraction:
    a, b = data.a, data.b
    e12 = cross_determinant(a[0], b[0], a[1], b[1])
    e34 = cross_determinant(a[2], b[2], a[3], b[3])
    exponents = (a[1] * e34, -a[0] * e34, -a[3] * e12, a[2] * e12)
    value = _unit_product(data, exponents, data.preimage)
    return _signed(value, e12 * e34)


def four_bilocal_from_data(data: LocalData, q_preimage: ProjPoint1) -> Fraction:
    """The four-fold (2,2)-limit product, cross-checked against its closed
    form (the first 4-function pattern at P divided by the same at Q)."""
    from_limits = (
        membrane_limit_22(data, q_preimage, 0, 1, 2, 3).payload
        / membrane_limit_22(data, q_preimage, 0, 1, 3, 2).payload
        / membrane_limit_22(data, q_preimage, 1, 0, 2, 3).payload
        * membrane_limit_22(data, q_preimage, 1, 0, 3, 2).payload
    )
    a, b = data.a, data.b
    e12 = cross_determinant(a[0], b[0], a[1], b[1])
    e34 = cross_determinant(a[2], b[2], a[3], b[3])
    exponents = (a[1] * e34, -a[0] * e34, -a[3] * e12, a[2] * e12)
    closed = _signed(
        _unit_product(data, exponents, data.preimage)
        / _unit_product(data, exponents, q_preimage),
        e12 * e34,
    )
    if from_limits != closed:
        raise InternalInconsistency(
            f"4-function limit product {from_limits} != closed form {closed}"
        )
    return closed


def parshin_second_from_data(data: LocalData) -> Fraction:
    """Second-type three-function symbol, computed two ways: the explicit
    determinant formula on the exceptional data (c, d) = (a + b, a), and the
    inverse of the first-type symbol.  They must agree identically."""
    exceptional = blowup_data(data)
    exponents = parshin_exponents(exceptional.a, exceptional.b)
    direct = _signed(
        _unit_product(exceptional, exponents, exceptional.preimage),
        parshin_sign_exponent(exceptional.a, exceptional.b),
    )
    inverse = 1 / parshin_from_data(data)
    if direct != inverse:
        raise InternalInconsistency(
            f"second symbol {direct} != inverse of first symbol {inverse}"
        )
    return direct


def four_second_from_data(data: LocalData) -> Fraction:
    """Second-type four-function symbol: the first-type symbol evaluated on
    the exceptional data (c, d) = (a + b, a), inverted."""
    return 1 / four_first_from_data(blowup_data(data))


# ---------------------------------------------------------------------------
# geometric context


@dataclass(frozen=True)
class CurveConfiguration:
    """Functions restricted once to a fixed base curve, ready for per-site
    local data.  The avoid set of the uniformizer line always contains every
    site, so one configuration serves all of them."""

    functions: tuple[SurfaceFunction, ...]
    curve: PlaneCurve
    param: CurveParam
    x: SurfaceFunction
    sites: tuple[ProjPoint2, ...]
    a: tuple[int, ...]
    restricted: tuple[P1Function, ...]

    def data_at(self, point: ProjPoint2) -> LocalData:
        if not self.curve.contains(point):
            raise PointNotOnCurve(f"{point} is not on {self.curve}")
        for poly, _ in self.x.factors:
            if poly != self.curve.poly and poly.evaluate(point.coords) == 0:
                raise UniformizerThroughPoint(
                    f"uniformizer component {poly} passes through {point}"
                )
        pre = self.param.preimage(point)
        b = tuple(r.ord_at(pre.coords) for r in self.restricted)
        return LocalData(self.curve, point, self.a, b, self.restricted, pre)


def configure(
    fs,
    curve: PlaneCurve,
    extra_avoid=(),
    x: SurfaceFunction | None = None,
    param: CurveParam | None = None,
) -> CurveConfiguration:
    fs = tuple(fs)
    if param is None:
        param = parametrize(curve)
    sites = tuple(enumerate_sites(fs, curve, param, require_component=False))
    if x is None:
        x = choose_uniformizer(curve, list(sites) + list(extra_avoid))
    if x.exponent_of(curve.poly) != 1:
        raise ValidationError("uniformizer does not vanish to order one on the curve")
    a_vec, restricted = [], []
    for f in fs:
        a, r = restrict_to_curve(f, curve, param, x)
        a_vec.append(a)
        restricted.append(r)
    return CurveConfiguration(
        fs, curve, param, x, sites, tuple(a_vec), tuple(restricted)
    )


# ---------------------------------------------------------------------------
# geometric symbol operations


def parshin_symbol(
    f1, f2, f3, curve: PlaneCurve, point: ProjPoint2, x=None, param=None
) -> Fraction:
    config = configure((f1, f2, f3), curve, extra_avoid=(point,), x=x, param=param)
    return parshin_from_data(config.data_at(point))


def parshin_refinement(
    f1, f2, f3, curve: PlaneCurve, point: ProjPoint2, base: ProjPoint2, x=None, param=None
) -> Fraction:
    if point == base:
        raise CoincidentPoints("refinement base point equals the point of interest")
    if not curve.contains(base):
        raise PointNotOnCurve(f"base point {base} is not on {curve}")
    config = configure((f1, f2, f3), curve, extra_avoid=(point, base), x=x, param=param)
    return parshin_refinement_from_data(
        config.data_at(point), config.param.preimage(base)
    )


def four_symbol_first(
    f1, f2, f3, f4, curve: PlaneCurve, point: ProjPoint2, x=None, param=None
) -> Fraction:
    config = configure((f1, f2, f3, f4), curve, extra_avoid=(point,), x=x, param=param)
    return four_first_from_data(config.data_at(point))


def four_bilocal(
    f1, f2, f3, f4, curve: PlaneCurve, point: ProjPoint2, base: ProjPoint2, x=None, param=None
) -> Fraction:
    if point == base:
        raise CoincidentPoints("bi-local base point equals the point of interest")
    if not curve.contains(base):
        raise PointNotOnCurve(f"base point {base} is not on {curve}")
    config = configure(
        (f1, f2, f3, f4), curve, extra_avoid=(point, base), x=x, param=param
    )
    return four_bilocal_from_data(config.data_at(point), config.param.preimage(base))


def parshin_symbol_second(
    f1, f2, f3, curve: PlaneCurve, point: ProjPoint2, x=None, param=None
) -> Fraction:
    config = configure((f1, f2, f3), curve, extra_avoid=(point,), x=x, param=param)
    return parshin_second_from_data(config.data_at(point))


def four_symbol_second(
    f1, f2, f3, f4, curve: PlaneCurve, point: ProjPoint2, x=None, param=None
) -> Fraction:
    config = configure((f1, f2, f3, f4), curve, extra_avoid=(point,), x=x, param=param)
    return four_second_from_data(config.data_at(point))


# ---------------------------------------------------------------------------
# reciprocity reports


@dataclass(frozen=True)
class ReciprocityReport:
    law: str
    sites: tuple[tuple[str, Fraction], ...]
    product: Fraction
    hypotheses: Diagnostics
    passed: bool

    @staticmethod
    def assemble(law: str, sites, hypotheses: Diagnostics) -> "ReciprocityReport":
        product = Fraction(1)
        for _, value in sites:
            product *= value
        return ReciprocityReport(
            law, tuple(sites), product, hypotheses, hypotheses.ok and product == 1
        )


def _first_type_report(
    law: str, fs, curve: PlaneCurve, symbol_from_data, param: CurveParam | None = None
) -> ReciprocityReport:
    from .plane import component_polys

    if curve.poly not in component_polys(fs):
        raise ValidationError("the base curve is not a component of any function")
    hypotheses = validate_normal_crossings(fs, curve, param)
    config = configure(fs, curve, param=param)
    sites = [
        (str(point), symbol_from_data(config.data_at(point))) for point in config.sites
    ]
    return ReciprocityReport.assemble(law, sites, hypotheses)


def check_parshin_first(f1, f2, f3, curve: PlaneCurve, param=None) -> ReciprocityReport:
    """Product of three-function symbols over every site of the base curve;
    exact pass iff the hypotheses hold and the product is 1."""
    return _first_type_report(
        "parshin-first", (f1, f2, f3), curve, parshin_from_data, param
    )


def check_four_first(f1, f2, f3, f4, curve: PlaneCurve, param=None) -> ReciprocityReport:
    return _first_type_report(
        "four-first", (f1, f2, f3, f4), curve, four_first_from_data, param
    )


def _second_type_report(
    law: str, fs, point: ProjPoint2, symbol_from_data, params=None
) -> ReciprocityReport:
    hypotheses = validate_distinct_tangents(fs, point)
    params = params or {}
    sites = []
    for poly in components_through(fs, point):
        curve = PlaneCurve.of(poly, trust=poly in params)
        config = configure(fs, curve, param=params.get(poly))
        sites.append((str(curve), symbol_from_data(config.data_at(point))))
    return ReciprocityReport.assemble(law, sites, hypotheses)


def check_parshin_second(f1, f2, f3, point: ProjPoint2, params=None) -> ReciprocityReport:
    """Product of three-function symbols over every divisor component through
    the point; the hypotheses are smoothness and distinct tangents there.
    `params` optionally maps component polynomials to parametrizations."""
    return _second_type_report(
        "parshin-second", (f1, f2, f3), point, parshin_from_data, params
    )


def check_four_second(f1, f2, f3, f4, point: ProjPoint2, params=None) -> ReciprocityReport:
    return _second_type_report(
        "four-second", (f1, f2, f3, f4), point, four_second_from_data, params
    )


def riemann_symmetry_check(
    f1, f2, f3, f4, curve: PlaneCurve, point: ProjPoint2
) -> bool:
    """Multiplicative curvature-tensor symmetries of the first four-function
    symbol: swapping either pair, or the two pairs, inverts the value."""
    config = configure((f1, f2, f3, f4), curve, extra_avoid=(point,))
    data = config.data_at(point)
    return riemann_symmetry_from_data(data)


def riemann_symmetry_from_data(data: LocalData) -> bool:
    base = four_first_from_data(data)
    return (
        base * four_first_from_data(data.select((1, 0, 2, 3))) == 1
        and base * four_first_from_data(data.select((0, 1, 3, 2))) == 1
        and base * four_first_from_data(data.select((2, 3, 0, 1))) == 1
    )
