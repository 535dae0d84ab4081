from fractions import Fraction

import pytest

from conftest import config_a, pf, point2, pp
from localsymbols.errors import (
    NonRationalSite,
    NonUniquePreimage,
    NoRationalPointFound,
    PointNotOnCurve,
    UniformizerThroughPoint,
    UnsupportedDegree,
)
from localsymbols.functions import FactoredFunction
from localsymbols.plane import (
    CurveParam,
    PlaneCurve,
    choose_uniformizer,
    enumerate_sites,
    intersection_multiplicity,
    local_data,
    ord_along_curve,
    parametrize,
    uniformizer_line,
    validate_distinct_tangents,
    validate_normal_crossings,
)
from localsymbols.polynomials import LINE_VARS, PLANE_VARS, HomPoly, mul_dicts, parse_poly


def xline(curve_text: str, line_text: str) -> FactoredFunction:
    curve = parse_poly(curve_text)
    line = parse_poly(line_text)
    return FactoredFunction.build(
        PLANE_VARS, 1, [(curve, 1), (line, -curve.degree)]
    )


def test_parametrize_lines():
    forms = parametrize(PlaneCurve.of(pp("X"))).forms
    assert [str(f) if f else "0" for f in forms] == ["0", "s", "t"]
    forms = parametrize(PlaneCurve.of(pp("X + Y + Z"))).forms
    assert [str(f) if f else "0" for f in forms] == ["s", "t", "-s - t"]


def test_parametrize_conic_by_stereographic_projection():
    forms = parametrize(PlaneCurve.of(pp("X*Z - Y^2"))).forms
    assert [str(f) for f in forms] == ["s^2", "s*t", "t^2"]


def test_parametrize_needs_rational_point_or_user_data():
    with pytest.raises(NoRationalPointFound):
        parametrize(PlaneCurve.of(pp("X^2 + Y^2 + Z^2")))
    with pytest.raises(UnsupportedDegree):
        parametrize(PlaneCurve.of(pp("X^2*Z - Y^3")))
    cubic = PlaneCurve.of(pp("X^2*Z - Y^3"))
    # cuspidal cubic with its standard parametrization
    param = CurveParam.of(cubic, (pp("s^3"), pp("s^2*t"), pp("t^3")))
    assert parametrize(cubic, param) is param


def test_user_param_validation():
    conic = PlaneCurve.of(pp("X*Z - Y^2"))
    with pytest.raises(Exception):
        CurveParam.of(conic, (pp("s^2"), pp("s*t"), pp("s*t")))  # not on curve
    with pytest.raises(Exception):
        CurveParam.of(conic, (pp("s"), None, pp("t")))  # wrong degree


def test_ord_along_curve():
    f = pf("(X)^1*(Z)^-1")
    assert ord_along_curve(f, PlaneCurve.of(pp("X"))) == 1
    assert ord_along_curve(f, PlaneCurve.of(pp("Y"))) == 0
    assert ord_along_curve(pf("(X)^2*(Y+Z)^1*(Z)^-3"), PlaneCurve.of(pp("Z"))) == -3


def test_choose_uniformizer_walks_the_line_sequence():
    C = PlaneCurve.of(pp("X"))
    x = choose_uniformizer(C, [point2(0, 0, 1), point2(0, 1, 0)])
    assert uniformizer_line(x, C) == pp("X + Y + Z")
    assert choose_uniformizer(C, []) == xline("X", "Z")
    conic = PlaneCurve.of(pp("X*Z - Y^2"))
    assert choose_uniformizer(conic, []) == xline("X*Z - Y^2", "Z")


def test_choose_uniformizer_terminates_past_the_pencil():
    # every line X + Y + k*Z passes through [1:-1:0]; the fallback
    # enumeration must still find an admissible line
    C = PlaneCurve.of(pp("X + Y"))
    avoid = [point2(0, 0, 1), point2(1, -1, 0)]
    x = choose_uniformizer(C, avoid)
    line = uniformizer_line(x, C)
    assert all(line.evaluate(p.coords) != 0 for p in avoid)


def test_local_data_worked_example():
    fs, C = config_a()
    x = FactoredFunction.build(
        PLANE_VARS, 1, [(pp("X"), 1), (pp("X + Y + 3*Z"), -1)]
    )
    data = local_data(fs, C, point2(0, 0, 1), x)
    assert data.a == (1, 0, 0)
    assert data.b == (0, 1, 0)
    assert str(data.preimage) == "[0:1]"
    assert [str(r) for r in data.restricted] == [
        "(t)^-1 * (s + 3*t)^1",
        "(t)^-1 * (s)^1",
        "(t)^-1 * (s + 2*t)^1",
    ]


def test_local_data_at_infinity_and_for_constants():
    C = PlaneCurve.of(pp("X"))
    x = choose_uniformizer(C, [point2(0, 1, 0), point2(0, 0, 1)])
    data = local_data([pf("(Y)^1*(Z)^-1")], C, point2(0, 1, 0), x)
    assert data.a == (0,) and data.b == (-1,)
    data = local_data([pf("7", variables=PLANE_VARS)], C, point2(0, 0, 1), x)
    assert data.a == (0,) and data.b == (0,)


def test_local_data_errors():
    fs, C = config_a()
    x = choose_uniformizer(C, [])
    with pytest.raises(PointNotOnCurve):
        local_data(fs, C, point2(1, 0, 0), x)
    with pytest.raises(UniformizerThroughPoint):
        # x = X/Z has its line through [0:1:0]
        local_data(fs, C, point2(0, 1, 0), x)


def test_uniformizer_independence_of_b():
    fs, C = config_a()
    P = point2(0, 0, 1)
    results = []
    for line_text in ("X + Y + Z", "X + Y + 3*Z", "X + Y + 4*Z", "Y + Z"):
        x = FactoredFunction.build(
            PLANE_VARS, 1, [(pp("X"), 1), (pp(line_text), -1)]
        )
        data = local_data(fs, C, P, x)
        results.append((data.a, data.b))
    assert len(set(results)) == 1


def test_restricted_divisors_have_degree_zero():
    fs, C = config_a()
    x = choose_uniformizer(C, [])
    from localsymbols.projline import divisor

    param = parametrize(C)
    data = local_data(fs, C, point2(0, 0, 1), x)
    for r in data.restricted:
        assert sum(m for _, m in divisor(r).entries) == 0


def test_reparametrization_leaves_local_data_alone():
    fs, C = config_a()
    P = point2(0, 0, 1)
    x = FactoredFunction.build(PLANE_VARS, 1, [(pp("X"), 1), (pp("X + Y + 3*Z"), -1)])
    base = local_data(fs, C, P, x)
    for matrix in ((0, 1, 1, 0), (1, 1, 0, 1), (2, 1, 1, 1)):
        param = reparametrized(parametrize(C), matrix)
        data = local_data(fs, C, P, x, param=param)
        assert data.a == base.a and data.b == base.b


def reparametrized(param: CurveParam, matrix) -> CurveParam:
    a, b, c, d = (Fraction(v) for v in matrix)
    assert a * d - b * c != 0
    s_image = {(1, 0): a, (0, 1): b}
    t_image = {(1, 0): c, (0, 1): d}
    forms = []
    for f in param.forms:
        if f is None:
            forms.append(None)
            continue
        acc: dict = {}
        for (es, et), coeff in f.terms:
            term = {(0, 0): coeff}
            for block, e in ((s_image, es), (t_image, et)):
                clean = {k: v for k, v in block.items() if v}
                for _ in range(e):
                    term = mul_dicts(term, clean)
            for k, v in term.items():
                acc[k] = acc.get(k, Fraction(0)) + v
        acc = {k: v for k, v in acc.items() if v}
        forms.append(HomPoly.make(LINE_VARS, acc))
    return CurveParam.of(param.curve, tuple(forms))


def test_intersection_multiplicity_examples():
    line = PlaneCurve.of(pp("X"))
    assert intersection_multiplicity(line, PlaneCurve.of(pp("Y")), point2(0, 0, 1)) == 1
    conic = PlaneCurve.of(pp("X*Z - Y^2"))
    assert intersection_multiplicity(conic, PlaneCurve.of(pp("Y")), point2(0, 0, 1)) == 1
    assert intersection_multiplicity(conic, PlaneCurve.of(pp("X")), point2(0, 0, 1)) == 2


def test_intersection_multiplicity_is_symmetric():
    conic = PlaneCurve.of(pp("X*Z - Y^2"))
    line_t = PlaneCurve.of(pp("X"))      # tangent at [0:0:1]
    line_s = PlaneCurve.of(pp("Y"))      # secant at [0:0:1]
    P = point2(0, 0, 1)
    assert intersection_multiplicity(conic, line_t, P) == intersection_multiplicity(
        line_t, conic, P
    )
    assert intersection_multiplicity(conic, line_s, P) == intersection_multiplicity(
        line_s, conic, P
    )


def test_enumerate_sites():
    fs, C = config_a()
    assert [str(p) for p in enumerate_sites(fs, C)] == ["[0:0:1]", "[0:1:0]", "[0:2:-1]"]
    assert [str(p) for p in enumerate_sites([pf("(X)^1*(Z)^-1")], C)] == ["[0:1:0]"]
    with_conic = [pf("(X*Z - Y^2)^1*(Z)^-2"), pf("(X)^1*(Z)^-1")]
    sites = enumerate_sites(with_conic, C)
    assert point2(0, 0, 1) in sites


def test_enumerate_sites_rejects_irrational_intersections():
    fs = [pf("(X^2 + Y^2 - 3*Z^2)^1*(Z)^-2"), pf("(X)^1*(Z)^-1")]
    with pytest.raises(NonRationalSite):
        enumerate_sites(fs, PlaneCurve.of(pp("X")))


def test_normal_crossings_validation():
    fs, C = config_a()
    assert validate_normal_crossings(fs, C).ok
    concurrent = [pf("(X)^1*(Z)^-1"), pf("(Y)^1*(Z)^-1"), pf("(X+Y)^1*(Z)^-1")]
    diag = validate_normal_crossings(concurrent, C)
    assert not diag.ok and any("three" in v for v in diag.violations)
    tangent = [pf("(X)^1*(Z)^-1"), pf("(X*Z - Y^2)^1*(Z)^-2")]
    diag = validate_normal_crossings(tangent, C)
    assert not diag.ok and any("tangent" in v for v in diag.violations)


def test_distinct_tangent_validation():
    P = point2(0, 0, 1)
    assert validate_distinct_tangents(
        [pf("(X)^1*(Z)^-1"), pf("(Y)^1*(Z)^-1")], P
    ).ok
    shared = [pf("(Y)^1*(Z)^-1"), pf("(Y*Z + X^2)^1*(Z)^-2")]
    diag = validate_distinct_tangents(shared, P)
    assert not diag.ok and any("tangent" in v for v in diag.violations)
    # three concurrent components are fine here as long as tangents differ
    assert validate_distinct_tangents(
        [pf("(X)^1*(Z)^-1"), pf("(Y)^1*(Z)^-1"), pf("(X+Y)^1*(Z)^-1")], P
    ).ok


def test_preimage_uniqueness_guard():
    # a two-to-one cover of the conic is rejected over any point: the
    # component degree check already refuses it, and even with a degree-4
    # trusted curve the preimage of [1:1:1] would be the two points [1:1]
    # and [1:-1]
    conic = PlaneCurve.of(pp("X*Z - Y^2"))
    with pytest.raises(Exception):
        CurveParam.of(conic, (pp("s^4"), pp("s^2*t^2"), pp("t^4")))
    quartic = PlaneCurve.of(pp("X*Z^3 - Y^4"), trust=True)
    param = CurveParam.of(quartic, (pp("s^4"), pp("s*t^3"), pp("t^4")))
    assert str(param.preimage(point2(1, 1, 1))) == "[1:1]"
    with pytest.raises(NonUniquePreimage):
        param.preimage(point2(1, 0, 0))


def test_intersection_multiplicity_matches_resultant_oracle():
    # eliminating X from the conic and its tangent line leaves -Y^2, whose
    # double root at the projection of [0:0:1] is the contact order
    from localsymbols.polynomials import rational_roots as broots
    from localsymbols.polynomials import resultant

    conic = pp("X*Z - Y^2")
    r = resultant(conic, pp("X"), "X")
    terms = {(e[1], e[2]): c for e, c in r.terms}
    roots, _ = broots(HomPoly.make(("s", "t"), terms))
    assert roots == {(0, 1): 2}
    assert intersection_multiplicity(
        PlaneCurve.of(conic), PlaneCurve.of(pp("X")), point2(0, 0, 1)
    ) == 2
