import math

import pytest

from conftest import pf
from localsymbols.errors import SingularityOnPath, ValidationError
from localsymbols.numeric import (
    ComplexPath,
    check_commutator,
    check_composition,
    check_homotopy_invariance,
    circle,
    dlog_integral,
    dlog_value,
    finite_singularities,
    iterated_dlog_integral,
    loop_around,
    segment,
    verify_bilocal,
    verify_residue_limit,
)

TWO_PI_I = 2j * math.pi

AFFINE_T = "(s)^1*(t)^-1"
AFFINE_T_MINUS_1 = "(s - t)^1*(t)^-1"


def test_dlog_value():
    f = pf(AFFINE_T)
    assert dlog_value(f, 2 + 0j) == pytest.approx(0.5)
    g = pf("(s)^2*(s - t)^1*(t)^-3")
    z = 3 + 1j
    assert dlog_value(g, z) == pytest.approx(2 / z + 1 / (z - 1))


def test_single_integral_residues():
    f = pf(AFFINE_T)
    result = dlog_integral(f, circle(0, 1.0))
    assert abs(result.value - TWO_PI_I) < 1e-10
    result = dlog_integral(pf(AFFINE_T_MINUS_1), circle(0, 0.5))
    assert abs(result.value) < 1e-10
    result = dlog_integral(pf("(s)^2*(t)^-2"), circle(0, 2.0))
    assert abs(result.value - 2 * TWO_PI_I) < 1e-10


def test_full_loop_counts_enclosed_orders():
    f = pf("(s)^1*(s - t)^2*(t)^-3")  # zeros at 0 (order 1) and 1 (order 2)
    result = dlog_integral(f, circle(0.5, 2.0))
    assert abs(result.value - 3 * TWO_PI_I) < 1e-9
    result = dlog_integral(f, circle(0, 0.5))
    assert abs(result.value - TWO_PI_I) < 1e-9


def test_reversal_negates_single_integral():
    f = pf(AFFINE_T)
    path = segment(1, 1 + 1j).concat(segment(1 + 1j, -1 + 1j))
    forward = dlog_integral(f, path)
    backward = dlog_integral(f, path.reversed())
    assert abs(forward.value + backward.value) < 1e-12


def test_singularity_clearance():
    f = pf(AFFINE_T)
    with pytest.raises(SingularityOnPath):
        dlog_integral(f, segment(-1, 1))
    assert finite_singularities(pf(AFFINE_T_MINUS_1)) == [(1 + 0j)]


def test_path_validation():
    with pytest.raises(ValidationError):
        ComplexPath.of([])
    with pytest.raises(ValidationError):
        segment(0, 1).concat(segment(2, 3))
    with pytest.raises(ValidationError):
        loop_around(0, 2.0, 1)  # base inside the circle


def test_iterated_shuffle_square():
    # for equal forms the iterated integral is half the square of the single
    f = pf(AFFINE_T)
    loop = circle(0, 1.0)
    single = dlog_integral(f, loop).value
    double = iterated_dlog_integral(f, f, loop).value
    assert abs(double - single**2 / 2) < 1e-9


def test_composition_identity():
    f1, f2 = pf(AFFINE_T), pf(AFFINE_T_MINUS_1)
    rep = check_composition(f1, f2, segment(2, 2 + 2j), segment(2 + 2j, -2 + 2j))
    assert rep.passed


def test_homotopy_invariance():
    f1, f2 = pf(AFFINE_T), pf(AFFINE_T_MINUS_1)
    upper = segment(2, 2 + 2j).concat(segment(2 + 2j, -2 + 2j), segment(-2 + 2j, -2))
    wider = segment(2, 3 + 3j).concat(segment(3 + 3j, -3 + 3j), segment(-3 + 3j, -2))
    rep = check_homotopy_invariance(f1, f2, upper, wider)
    assert rep.passed


def test_commutator_identity():
    f1, f2 = pf(AFFINE_T), pf(AFFINE_T_MINUS_1)
    rep = check_commutator(f1, f2, 0, 1, 0.2, 0.5 - 1j)
    assert rep.passed
    assert abs(rep.expected - (TWO_PI_I) ** 2) < 1e-9


def test_verify_bilocal_examples():
    rep = verify_bilocal(pf(AFFINE_T), pf(AFFINE_T_MINUS_1), 0, "1/2", 0.1)
    assert rep.expected.real == 0.5 and rep.passed
    rep = verify_bilocal(pf(AFFINE_T), pf(AFFINE_T), 0, 2, 0.1)
    assert rep.expected.real == -1 and rep.passed
    constant = pf("3", variables=("s", "t"))
    rep = verify_bilocal(pf(AFFINE_T), constant, 0, "1/2", 0.1)
    assert rep.expected.real == 1 and rep.passed


def test_verify_residue_limit_examples():
    f = pf(AFFINE_T)
    rep = verify_residue_limit(f, f, 0, (0.1, 0.05, 0.01), quad_tol=1e-12)
    assert all(d < 1e-9 for d in rep.deviations)
    f2 = pf("(s)^1*(s + t)^1*(t)^-2")  # affine t*(1+t)
    rep = verify_residue_limit(f, f2, 0, (0.1, 0.05, 0.01))
    assert rep.strictly_decreasing and rep.deviations[-1] < 0.1
    unit = pf(AFFINE_T_MINUS_1)  # no zero or pole at the origin
    rep = verify_residue_limit(unit, f, 1, (0.1, 0.05))
    assert rep.target == 0


def test_loop_shape():
    loop = loop_around(0, 0.1, 0.5)
    assert abs(loop.start - 0.5) < 1e-12 and abs(loop.end - 0.5) < 1e-12
    assert len(loop.segments) == 3
