import pytest
from fractions import Fraction

from localsymbols.errors import DegreeTooHigh, ParseError, ValidationError
from localsymbols.functions import FactoredFunction, parse_function, power_product
from localsymbols.polynomials import LINE_VARS, PLANE_VARS, parse_poly


def test_build_normalizes_and_merges_factors():
    f = FactoredFunction.build(
        LINE_VARS,
        1,
        [
            (parse_poly("2*s"), 1),
            (parse_poly("-3*t"), -1),
            (parse_poly("s"), 2),
            (parse_poly("t"), -2),
        ],
    )
    assert f.constant == Fraction(-2, 3)
    assert [(str(p), e) for p, e in f.factors] == [("t", -3), ("s", 3)]


def test_degree_balance_is_enforced():
    with pytest.raises(ValidationError):
        FactoredFunction.build(PLANE_VARS, 1, [(parse_poly("X"), 1)])
    with pytest.raises(ValidationError):
        parse_function("(X*Z - Y^2)^1 * (Z)^-1")


def test_reducible_factors_are_rejected():
    with pytest.raises(ValidationError):
        parse_function("(X*Y)^1 * (Z)^-2")


def test_trust_flag_for_high_degree():
    text = "(X^4 + Y^4 - 2*Z^4)^1 * (Z)^-4"
    with pytest.raises(DegreeTooHigh):
        parse_function(text)
    f = parse_function(text, trust=True)
    assert f.factors[-1][0].degree in (1, 4)


def test_zero_constant_rejected():
    with pytest.raises((ValidationError, ParseError)):
        parse_function("0 * (s)^1 * (t)^-1")


def test_constants_fold_into_the_constant_slot():
    f = parse_function("2 * (3) * (s)^1 * (t)^-1")
    assert f.constant == 6 and len(f.factors) == 2
    g = parse_function("2 * (1/2) * (s)^1 * (t)^-1")
    assert g.constant == 1


def test_power_product_cancellation():
    s_over_t = parse_function("(s)^1*(t)^-1")
    shifted = parse_function("(s - t)^1*(t)^-1")
    combo = power_product([s_over_t, shifted], [2, -2])
    assert combo == (s_over_t * shifted.inverse()) ** 2
    assert power_product([s_over_t], [0]).is_constant()


def test_string_round_trip():
    for text in (
        "(s)^1 * (t)^-1",
        "-5 * (s - t)^2 * (t)^-2",
        "1/2 * (X)^1 * (Y + 2*Z)^1 * (Z)^-2",
        "7",
    ):
        variables = LINE_VARS if "s" in text or text == "7" else PLANE_VARS
        f = parse_function(text, variables)
        assert parse_function(str(f), variables) == f
