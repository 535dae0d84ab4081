"""Floating-point iterated path integrals on the punctured projective line.

Works in the affine chart z = s/t.  Integrands are logarithmic derivatives
of split rational functions, so no branch choices are ever needed: single
integrals use composite Gauss-Legendre quadrature of order 16 with adaptive
bisection, and the double (iterated) integral

    I(gamma; f1, f2) = integral over 0 < t1 < t2 < 1 of
                       dlog f1 (gamma(t1)) ^ dlog f2 (gamma(t2))

is integrated as the equivalent coupled system y1' = w1, y2' = y1 * w2 with
adaptive fourth-order stepping.  Only final comparisons exponentiate, which
removes all 2*pi*i ambiguity.

These routines exist to validate, numerically, the identities that motivate
the exact symbols: the conjugated-loop formula whose exponential is the
two-point symbol, the small-loop residue limit (2*pi*i)^2/2 * a1 * a2, and
the homotopy / composition / commutator identities of iterated integrals.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import NoConvergence, SingularityOnPath, ValidationError
from .projline import P1Function, ProjPoint1, bilocal_symbol, ord_at

TWO_PI_I = 2j * math.pi
DEFAULT_TOL = 1e-8
MIN_CLEARANCE = 1e-6

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(16)


# ---------------------------------------------------------------------------
# paths


@dataclass(frozen=True)
class LineSegmentPath:
    start: complex
    end: complex

    def at(self, u: float) -> complex:
        return self.start + u * (self.end - self.start)

    def velocity(self, u: float) -> complex:
        return self.end - self.start

    def distance_to(self, point: complex) -> float:
        d = self.end - self.start
        if d == 0:
            return abs(point - self.start)
        u = ((point - self.start) / d).real
        u = min(1.0, max(0.0, u))
        return abs(point - self.at(u))

    def reversed(self) -> "LineSegmentPath":
        return LineSegmentPath(self.end, self.start)


@dataclass(frozen=True)
class CircularArcPath:
    center: complex
    radius: float
    angle_start: float
    angle_end: float  # may differ by any multiple of 2*pi; sign = orientation

    def at(self, u: float) -> complex:
        angle = self.angle_start + u * (self.angle_end - self.angle_start)
        return self.center + self.radius * cmath.exp(1j * angle)

    def velocity(self, u: float) -> complex:
        angle = self.angle_start + u * (self.angle_end - self.angle_start)
        return 1j * (self.angle_end - self.angle_start) * self.radius * cmath.exp(1j * angle)

    def distance_to(self, point: complex) -> float:
        rel = point - self.center
        rho = abs(rel)
        if rho == 0:
            return self.radius
        theta = cmath.phase(rel)
        lo, hi = sorted((self.angle_start, self.angle_end))
        for shift in range(math.floor((lo - theta) / (2 * math.pi)), math.ceil((hi - theta) / (2 * math.pi)) + 1):
            if lo <= theta + 2 * math.pi * shift <= hi:
                return abs(rho - self.radius)
        return min(abs(point - self.at(0.0)), abs(point - self.at(1.0)))

    def reversed(self) -> "CircularArcPath":
        return CircularArcPath(self.center, self.radius, self.angle_end, self.angle_start)


Segment = LineSegmentPath | CircularArcPath


@dataclass(frozen=True)
class ComplexPath:
    segments: tuple[Segment, ...]

    @staticmethod
    def of(segments) -> "ComplexPath":
        segments = tuple(segments)
        if not segments:
            raise ValidationError("a path needs at least one segment")
        for prev, nxt in zip(segments, segments[1:]):
            if abs(prev.at(1.0) - nxt.at(0.0)) > 1e-9:
                raise ValidationError("consecutive path segments do not share endpoints")
        return ComplexPath(segments)

    @property
    def start(self) -> complex:
        return self.segments[0].at(0.0)

    @property
    def end(self) -> complex:
        return self.segments[-1].at(1.0)

    def reversed(self) -> "ComplexPath":
        return ComplexPath(tuple(seg.reversed() for seg in reversed(self.segments)))

    def concat(self, *others: "ComplexPath") -> "ComplexPath":
        segments = list(self.segments)
        for other in others:
            segments.extend(other.segments)
        return ComplexPath.of(segments)

    def clearance(self, points) -> float:
        distances = [
            seg.distance_to(p) for seg in self.segments for p in points
        ]
        return min(distances) if distances else math.inf


def segment(a, b) -> ComplexPath:
    return ComplexPath.of([LineSegmentPath(complex(a), complex(b))])


def circle(center, radius: float, base_angle: float = 0.0) -> ComplexPath:
    """Full counterclockwise circle starting at angle base_angle."""
    return ComplexPath.of(
        [CircularArcPath(complex(center), float(radius), base_angle, base_angle + 2 * math.pi)]
    )


def loop_around(puncture, radius: float, base) -> ComplexPath:
    """Simple loop around a point with a base point: approach segment, full
    counterclockwise circle, return segment."""
    puncture = complex(puncture)
    base = complex(base)
    direction = base - puncture
    if abs(direction) <= radius:
        raise ValidationError("base point lies inside the loop circle")
    entry = puncture + radius * direction / abs(direction)
    approach = segment(base, entry)
    angle = cmath.phase(entry - puncture)
    return approach.concat(circle(puncture, radius, angle), approach.reversed())


def commutator_loop(p1, p2, radius: float, base) -> ComplexPath:
    alpha = loop_around(p1, radius, base)
    beta = loop_around(p2, radius, base)
    return alpha.concat(beta, alpha.reversed(), beta.reversed())


# ---------------------------------------------------------------------------
# integrands


def _factor_complex_coeffs(poly) -> list[complex]:
    coeffs = [0j] * (poly.degree + 1)
    for (es, _et), c in poly.terms:
        coeffs[es] = complex(c)
    return coeffs


def finite_singularities(*functions: P1Function) -> list[complex]:
    """Zeros and poles in the affine chart (the point at infinity is not a
    chart point and needs no clearance)."""
    points: list[complex] = []
    for f in functions:
        for poly, _ in f.factors:
            coeffs = _factor_complex_coeffs(poly)
            while coeffs and abs(coeffs[-1]) == 0:
                coeffs.pop()
            if len(coeffs) <= 1:
                continue  # pure power of t: only the point at infinity
            roots = np.roots(list(reversed(coeffs)))
            points.extend(complex(r) for r in roots)
    return points


def dlog_value(f: P1Function, z: complex) -> complex:
    """(f'/f)(z) in the affine chart, summed over factors."""
    total = 0j
    for poly, exponent in f.factors:
        coeffs = _factor_complex_coeffs(poly)
        value = 0j
        derivative = 0j
        for c in reversed(coeffs):
            derivative = derivative * z + value
            value = value * z + c
        total += exponent * derivative / value
    return total


@dataclass(frozen=True)
class NumericResult:
    value: complex
    error_estimate: float


def _require_clearance(path: ComplexPath, functions) -> None:
    clearance = path.clearance(finite_singularities(*functions))
    if clearance < MIN_CLEARANCE:
        raise SingularityOnPath(
            f"path approaches a zero or pole within {clearance:.2e}"
        )


# ---------------------------------------------------------------------------
# single integral


def _gl16(func, seg: Segment, u0: float, u1: float) -> complex:
    mid = 0.5 * (u0 + u1)
    half = 0.5 * (u1 - u0)
    total = 0j
    for node, weight in zip(_GL_NODES, _GL_WEIGHTS):
        u = mid + half * node
        total += weight * func(seg.at(u)) * seg.velocity(u)
    return total * half


def _adaptive_segment(func, seg: Segment, u0: float, u1: float, tol: float, depth: int) -> tuple[complex, float]:
    whole = _gl16(func, seg, u0, u1)
    mid = 0.5 * (u0 + u1)
    left = _gl16(func, seg, u0, mid)
    right = _gl16(func, seg, mid, u1)
    err = abs(whole - (left + right))
    if err < tol:
        return left + right, err
    if depth >= 20:
        raise NoConvergence("quadrature bisection exceeded 20 levels")
    lv, le = _adaptive_segment(func, seg, u0, mid, tol / 2, depth + 1)
    rv, re_ = _adaptive_segment(func, seg, mid, u1, tol / 2, depth + 1)
    return lv + rv, le + re_


def dlog_integral(f: P1Function, path: ComplexPath, tol: float = DEFAULT_TOL) -> NumericResult:
    """integral of df/f along the path."""
    _require_clearance(path, (f,))
    func = lambda z: dlog_value(f, z)
    total = 0j
    err = 0.0
    per_segment = tol / len(path.segments)
    for seg in path.segments:
        value, e = _adaptive_segment(func, seg, 0.0, 1.0, per_segment, 0)
        total += value
        err += e
    return NumericResult(total, err)


# ---------------------------------------------------------------------------
# iterated integral


def iterated_dlog_integral(
    f1: P1Function, f2: P1Function, path: ComplexPath, tol: float = DEFAULT_TOL
) -> NumericResult:
    """integral of (df1/f1) o (df2/f2), the first form at the earlier time."""
    _require_clearance(path, (f1, f2))
    y1 = 0j
    y2 = 0j
    err = 0.0
    per_segment = tol / len(path.segments)
    for seg in path.segments:
        y1, y2, e = _integrate_system(f1, f2, seg, y1, y2, per_segment)
        err += e
    return NumericResult(y2, err)


def _system_rhs(f1: P1Function, f2: P1Function, seg: Segment, u: float, y1: complex):
    z = seg.at(u)
    v = seg.velocity(u)
    w1 = dlog_value(f1, z) * v
    w2 = dlog_value(f2, z) * v
    return w1, y1 * w2


def _rk4(f1, f2, seg, u: float, h: float, y1: complex, y2: complex):
    k1a, k1b = _system_rhs(f1, f2, seg, u, y1)
    k2a, k2b = _system_rhs(f1, f2, seg, u + h / 2, y1 + h / 2 * k1a)
    k3a, k3b = _system_rhs(f1, f2, seg, u + h / 2, y1 + h / 2 * k2a)
    k4a, k4b = _system_rhs(f1, f2, seg, u + h, y1 + h * k3a)
    ny1 = y1 + h / 6 * (k1a + 2 * k2a + 2 * k3a + k4a)
    ny2 = y2 + h / 6 * (k1b + 2 * k2b + 2 * k3b + k4b)
    return ny1, ny2


def _integrate_system(f1, f2, seg, y1: complex, y2: complex, tol: float):
    u = 0.0
    h = 0.05
    err = 0.0
    steps = 0
    while u < 1.0 - 1e-14:
        h = min(h, 1.0 - u)
        full1, full2 = _rk4(f1, f2, seg, u, h, y1, y2)
        m1, m2 = _rk4(f1, f2, seg, u, h / 2, y1, y2)
        half1, half2 = _rk4(f1, f2, seg, u + h / 2, h / 2, m1, m2)
        local = max(abs(full1 - half1), abs(full2 - half2))
        budget = tol * max(h, 1e-3)
        if local < budget:
            # one Richardson extrapolation order: error ~ local / 15
            y1 = half1 + (half1 - full1) / 15
            y2 = half2 + (half2 - full2) / 15
            u += h
            err += local / 15
            if local < budget / 32 and h < 0.25:
                h *= 2
        else:
            h /= 2
            if h < 1e-9:
                raise NoConvergence("step size underflow in iterated integral")
        steps += 1
        if steps > 500_000:
            raise NoConvergence("too many steps in iterated integral")
    return y1, y2, err


# ---------------------------------------------------------------------------
# verification reports


@dataclass(frozen=True)
class ComparisonReport:
    label: str
    expected: complex
    computed: complex
    distance: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.distance < self.tol


def verify_bilocal(
    f1: P1Function,
    f2: P1Function,
    p,
    q,
    radius: float,
    tol: float = 1e-6,
    quad_tol: float = DEFAULT_TOL,
) -> ComparisonReport:
    """exp((2 pi i)^-1 * iterated integral over the conjugated loop) against
    the exact two-point symbol; p, q are affine rational points."""
    p = Fraction(p)
    q = Fraction(q)
    exact = bilocal_symbol(
        f1, f2, ProjPoint1.from_rational(p), ProjPoint1.from_rational(q)
    )
    path = loop_around(complex(p), radius, complex(q))
    integral = iterated_dlog_integral(f1, f2, path, quad_tol)
    numeric = cmath.exp(integral.value / TWO_PI_I)
    return ComparisonReport(
        "bilocal", complex(Fraction(exact)), numeric, abs(numeric - complex(exact)), tol
    )


@dataclass(frozen=True)
class LimitReport:
    target: complex
    radii: tuple[float, ...]
    deviations: tuple[float, ...]

    @property
    def strictly_decreasing(self) -> bool:
        return all(a > b for a, b in zip(self.deviations, self.deviations[1:]))


def verify_residue_limit(
    f1: P1Function, f2: P1Function, p, radii, quad_tol: float = DEFAULT_TOL
) -> LimitReport:
    """Iterated integrals over shrinking circles around p against the limit
    (2 pi i)^2 / 2 * a1 * a2."""
    p = Fraction(p)
    point = ProjPoint1.from_rational(p)
    a1 = ord_at(f1, point)
    a2 = ord_at(f2, point)
    target = TWO_PI_I**2 / 2 * a1 * a2
    deviations = []
    for radius in radii:
        result = iterated_dlog_integral(f1, f2, circle(complex(p), radius), quad_tol)
        deviations.append(abs(result.value - target))
    return LimitReport(target, tuple(float(r) for r in radii), tuple(deviations))


def check_homotopy_invariance(
    f1: P1Function, f2: P1Function, path_a: ComplexPath, path_b: ComplexPath, tol: float = 1e-6
) -> ComparisonReport:
    """Two homotopic paths with the same endpoints must give the same
    iterated integral (within 10x the quadrature tolerance)."""
    ia = iterated_dlog_integral(f1, f2, path_a, tol / 100)
    ib = iterated_dlog_integral(f1, f2, path_b, tol / 100)
    return ComparisonReport("homotopy", ia.value, ib.value, abs(ia.value - ib.value), tol)


def check_composition(
    f1: P1Function, f2: P1Function, gamma1: ComplexPath, gamma2: ComplexPath, tol: float = 1e-6
) -> ComparisonReport:
    """I(g1 g2) = I(g1) + I1(g1) * I2(g2) + I(g2)."""
    whole = iterated_dlog_integral(f1, f2, gamma1.concat(gamma2), tol / 100)
    part1 = iterated_dlog_integral(f1, f2, gamma1, tol / 100)
    part2 = iterated_dlog_integral(f1, f2, gamma2, tol / 100)
    single1 = dlog_integral(f1, gamma1, tol / 100)
    single2 = dlog_integral(f2, gamma2, tol / 100)
    rhs = part1.value + single1.value * single2.value + part2.value
    return ComparisonReport("composition", rhs, whole.value, abs(whole.value - rhs), tol)


def check_commutator(
    f1: P1Function,
    f2: P1Function,
    p1,
    p2,
    radius: float,
    base,
    tol: float = 1e-6,
) -> ComparisonReport:
    """I over a b a^-1 b^-1 equals the antisymmetrized product of single
    loop integrals."""
    alpha = loop_around(complex(p1), radius, complex(base))
    beta = loop_around(complex(p2), radius, complex(base))
    lhs = iterated_dlog_integral(f1, f2, alpha.concat(beta, alpha.reversed(), beta.reversed()), tol / 100)
    a1 = dlog_integral(f1, alpha, tol / 100)
    b2 = dlog_integral(f2, beta, tol / 100)
    a2 = dlog_integral(f2, alpha, tol / 100)
    b1 = dlog_integral(f1, beta, tol / 100)
    rhs = a1.value * b2.value - a2.value * b1.value
    return ComparisonReport("commutator", rhs, lhs.value, abs(lhs.value - rhs), tol)
