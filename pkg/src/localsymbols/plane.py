"""Geometry of the projective plane.

Everything surface-local is reduced exactly to the projective line through
rational curve parametrizations: lines are parametrized by solving their
linear relation, smooth conics by stereographic projection from a small
rational point, and higher-degree rational curves by a user-supplied
parametrization.  Restriction of a factored function to a curve composes
each factor with the parametrization and refactors the result over the
rationals, so orders of vanishing and values stay exact.

The local data of functions f_1..f_n at a flag (C, P) consists of
a_k = ord_C(f_k), the cancelled restrictions g_k = x^(-a_k) f_k pulled back
to P^1, and b_k = ord of the pulled-back g_k at the parameter preimage of P.
The uniformizer is always x = C / L^deg(C) for a line L from a deterministic
sequence that misses every relevant point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import count

from .errors import (
    InvalidParametrization,
    NonRationalSite,
    NonUniquePreimage,
    NoRationalPointFound,
    PointNotOnCurve,
    RestrictionVanishes,
    UniformizerThroughPoint,
    UnsupportedDegree,
    ValidationError,
)
from .functions import FactoredFunction, p1_function_from_forms
from .polynomials import (
    LINE_VARS,
    PLANE_VARS,
    HomPoly,
    binary_gcd,
    low_degree_irreducible,
    monomial,
    normalize,
    rational_roots,
    substitute_param,
)
from .projline import P1Function, ProjPoint1

SurfaceFunction = FactoredFunction


@dataclass(frozen=True)
class ProjPoint2:
    """A rational point of P^2 in normalized primitive-integer form."""

    x: int
    y: int
    z: int

    @staticmethod
    def of(x, y, z) -> "ProjPoint2":
        coords = _clear_denominators((x, y, z))
        if coords == (0, 0, 0):
            raise ValidationError("(0, 0, 0) is not a projective point")
        g = 0
        for c in coords:
            g = math.gcd(g, abs(c))
        coords = tuple(c // g for c in coords)
        first = next(c for c in coords if c != 0)
        if first < 0:
            coords = tuple(-c for c in coords)
        return ProjPoint2(*coords)

    @property
    def coords(self) -> tuple[int, int, int]:
        return (self.x, self.y, self.z)

    def __str__(self) -> str:
        return f"[{self.x}:{self.y}:{self.z}]"

    __repr__ = __str__

    def sort_key(self):
        return self.coords


def _clear_denominators(values) -> tuple[int, ...]:
    fracs = [Fraction(v) for v in values]
    lcm = 1
    for f in fracs:
        lcm = lcm * f.denominator // math.gcd(lcm, f.denominator)
    return tuple(int(f * lcm) for f in fracs)


@dataclass(frozen=True)
class PlaneCurve:
    """An irreducible plane curve cut out by a normalized form."""

    poly: HomPoly
    trusted: bool = False

    @staticmethod
    def of(poly: HomPoly, trust: bool = False) -> "PlaneCurve":
        if poly.variables != PLANE_VARS:
            raise ValidationError("plane curves live in (X, Y, Z)")
        poly = normalize(poly)
        if poly.degree == 0:
            raise ValidationError("a constant does not cut out a curve")
        if poly.degree <= 3:
            if not low_degree_irreducible(poly):
                raise ValidationError(f"curve polynomial {poly} is reducible")
        elif not trust:
            raise ValidationError(
                f"degree {poly.degree} curve needs an explicit trust flag"
            )
        return PlaneCurve(poly, trusted=poly.degree > 3)

    @property
    def degree(self) -> int:
        return self.poly.degree

    def contains(self, point: ProjPoint2) -> bool:
        return self.poly.evaluate(point.coords) == 0

    def __str__(self) -> str:
        return str(self.poly)

    __repr__ = __str__


@dataclass(frozen=True)
class CurveParam:
    """A rational parametrization P^1 -> C by a triple of binary forms."""

    curve: PlaneCurve
    forms: tuple[HomPoly | None, HomPoly | None, HomPoly | None]

    @staticmethod
    def of(curve: PlaneCurve, forms) -> "CurveParam":
        forms = tuple(forms)
        degrees = {f.degree for f in forms if f is not None}
        if not degrees:
            raise InvalidParametrization("all parametrization components are zero")
        if len(degrees) != 1:
            raise InvalidParametrization("components have different degrees")
        (degree,) = degrees
        if degree != curve.degree:
            raise InvalidParametrization(
                f"component degree {degree} != curve degree {curve.degree}"
            )
        if substitute_param(curve.poly, forms) is not None:
            raise InvalidParametrization("composition with the curve is not zero")
        if _common_root_exists(forms):
            raise InvalidParametrization("components share a root on P^1")
        forms = _normalize_param_forms(forms)
        return CurveParam(curve, forms)

    def point_at(self, s: int, t: int) -> ProjPoint2:
        values = tuple(
            int(f.evaluate((s, t))) if f is not None else 0 for f in self.forms
        )
        return ProjPoint2.of(*values)

    def preimage(self, point: ProjPoint2) -> ProjPoint1:
        """The unique parameter point mapping to `point`."""
        minors = []
        p = point.coords
        for i, j in ((0, 1), (0, 2), (1, 2)):
            fi, fj = self.forms[i], self.forms[j]
            d: dict = {}
            if fi is not None and p[j]:
                d = {e: c * p[j] for e, c in fi.terms}
            if fj is not None and p[i]:
                for e, c in fj.terms:
                    d[e] = d.get(e, Fraction(0)) - c * p[i]
            d = {e: c for e, c in d.items() if c != 0}
            if d:
                minors.append(HomPoly.make(LINE_VARS, d))
        if not minors:
            raise PointNotOnCurve(f"degenerate preimage computation at {point}")
        g = minors[0]
        for m in minors[1:]:
            if g is None:
                break
            g = binary_gcd(g, m)
        if g is None:
            raise PointNotOnCurve(f"{point} is not on the curve {self.curve}")
        roots, nonsplit = rational_roots(g)
        if nonsplit or len(roots) != 1:
            raise NonUniquePreimage(
                f"parametrization is not injective over {point}"
            )
        ((u, v), mult) = next(iter(roots.items()))
        if mult != 1:
            raise NonUniquePreimage(f"parameter ramifies over {point}")
        return ProjPoint1.of(u, v)


def _common_root_exists(forms) -> bool:
    # zero components vanish everywhere, so only the nonzero ones matter; a
    # single nonzero binary form of positive degree always has roots
    present = [f for f in forms if f is not None]
    if len(present) == 1:
        return True
    g: HomPoly | None = present[0]
    for f in present[1:]:
        if g is None:
            return False
        g = binary_gcd(g, f)
    return g is not None


def _normalize_param_forms(forms):
    coeffs = []
    for f in forms:
        if f is not None:
            coeffs.extend(c for _, c in f.terms)
    lcm = 1
    for c in coeffs:
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    g = 0
    for c in coeffs:
        g = math.gcd(g, abs(c.numerator * (lcm // c.denominator)))
    scale = Fraction(g, lcm)
    first = next(f for f in forms if f is not None)
    if first.leading_coefficient() < 0:
        scale = -scale
    return tuple(f.scale(1 / scale) if f is not None else None for f in forms)


# ---------------------------------------------------------------------------
# parametrization

def parametrize(curve: PlaneCurve, user_param: CurveParam | None = None) -> CurveParam:
    """Parametrization of a line or smooth conic; user-supplied otherwise.

    Conics are projected stereographically from the first rational point of
    coordinate height <= 20 in a fixed enumeration; the parametrization is
    then bijective, so preimages are unique.
    """
    if user_param is not None:
        if user_param.curve.poly != curve.poly:
            raise InvalidParametrization("parametrization belongs to another curve")
        return user_param
    if curve.degree == 1:
        return _parametrize_line(curve)
    if curve.degree == 2:
        return _parametrize_conic(curve)
    raise UnsupportedDegree(
        f"no automatic parametrization for degree {curve.degree}; supply one"
    )


def _parametrize_line(curve: PlaneCurve) -> CurveParam:
    """Solve the linear relation for the last variable with a nonzero
    coefficient; the remaining two variables carry s and t in order."""
    coeffs = [curve.poly.coefficient(e) for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1))]
    pivot = max(i for i, c in enumerate(coeffs) if c != 0)
    others = [i for i in range(3) if i != pivot]
    s = monomial(LINE_VARS, (1, 0))
    t = monomial(LINE_VARS, (0, 1))
    forms: list[HomPoly | None] = [None, None, None]
    forms[others[0]] = s.scale(coeffs[pivot])
    forms[others[1]] = t.scale(coeffs[pivot])
    pieces = {}
    if coeffs[others[0]]:
        pieces[(1, 0)] = -coeffs[others[0]]
    if coeffs[others[1]]:
        pieces[(0, 1)] = -coeffs[others[1]]
    forms[pivot] = HomPoly.make(LINE_VARS, pieces) if pieces else None
    return CurveParam.of(curve, tuple(forms))


def _conic_bilinear(poly: HomPoly, u, v) -> Fraction:
    return (
        poly.evaluate(tuple(a + b for a, b in zip(u, v)))
        - poly.evaluate(u)
        - poly.evaluate(v)
    )


def rational_point_on_conic(poly: HomPoly, height: int = 20) -> ProjPoint2:
    """First rational point in the height-then-lex enumeration of normalized
    primitive coordinate triples; bounded search, the caller must supply a
    parametrization beyond height 20."""
    for h in range(1, height + 1):
        candidates = []
        for x in range(-h, h + 1):
            for y in range(-h, h + 1):
                for z in range(-h, h + 1):
                    if max(abs(x), abs(y), abs(z)) != h or (x, y, z) == (0, 0, 0):
                        continue
                    if math.gcd(math.gcd(abs(x), abs(y)), abs(z)) != 1:
                        continue
                    first = next(c for c in (x, y, z) if c)
                    if first < 0:
                        continue
                    candidates.append((x, y, z))
        for point in sorted(candidates):
            if poly.evaluate(point) == 0:
                return ProjPoint2.of(*point)
    raise NoRationalPointFound(
        f"no rational point of height <= {height} on the conic {poly}"
    )


def _parametrize_conic(curve: PlaneCurve) -> CurveParam:
    base = rational_point_on_conic(curve.poly)
    p0 = base.coords
    basis = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    u_dir = v_dir = None
    for i in range(3):
        for j in range(i + 1, 3):
            det = _det3(p0, basis[i], basis[j])
            if det != 0:
                u_dir, v_dir = basis[i], basis[j]
                break
        if u_dir:
            break
    assert u_dir is not None and v_dir is not None
    # second intersection of the line P0 + w*(s*U + t*V) with the conic:
    # Q(D) * P0 - B(P0, D) * D, a degree-2 triple in (s, t)
    s = monomial(LINE_VARS, (1, 0))
    t = monomial(LINE_VARS, (0, 1))
    forms: list[HomPoly | None] = []
    qd = _conic_quadratic_in_st(curve.poly, u_dir, v_dir)
    bd = _conic_linear_in_st(curve.poly, p0, u_dir, v_dir)
    for k in range(3):
        terms: dict = {}
        if p0[k]:
            for e, c in qd.items():
                terms[e] = terms.get(e, Fraction(0)) + c * p0[k]
        # subtract B(P0, D) * D_k where D_k = s*u_k + t*v_k
        for e, c in bd.items():
            if u_dir[k]:
                key = (e[0] + 1, e[1])
                terms[key] = terms.get(key, Fraction(0)) - c * u_dir[k]
            if v_dir[k]:
                key = (e[0], e[1] + 1)
                terms[key] = terms.get(key, Fraction(0)) - c * v_dir[k]
        terms = {e: c for e, c in terms.items() if c != 0}
        forms.append(HomPoly.make(LINE_VARS, terms) if terms else None)
    return CurveParam.of(curve, tuple(forms))


def _det3(a, b, c) -> int:
    return (
        a[0] * (b[1] * c[2] - b[2] * c[1])
        - a[1] * (b[0] * c[2] - b[2] * c[0])
        + a[2] * (b[0] * c[1] - b[1] * c[0])
    )


def _conic_quadratic_in_st(poly: HomPoly, u_dir, v_dir) -> dict:
    """Coefficients of Q(s*U + t*V) as a binary quadratic in (s, t)."""
    quu = poly.evaluate(u_dir)
    qvv = poly.evaluate(v_dir)
    buv = _conic_bilinear(poly, u_dir, v_dir)
    return {
        e: c
        for e, c in (((2, 0), quu), ((1, 1), buv), ((0, 2), qvv))
        if c != 0
    }


def _conic_linear_in_st(poly: HomPoly, p0, u_dir, v_dir) -> dict:
    bu = _conic_bilinear(poly, p0, u_dir)
    bv = _conic_bilinear(poly, p0, v_dir)
    return {e: c for e, c in (((1, 0), bu), ((0, 1), bv)) if c != 0}


# ---------------------------------------------------------------------------
# uniformizers

def line_sequence():
    """Deterministic sequence of candidate uniformizer lines.

    Starts with the documented prefix Z, Y, X, X+Y+Z, X+Y+2Z, ... and, past
    k = 25, falls back to a height-ordered enumeration of all primitive
    lines so the walk terminates for every finite avoid set (the prefix
    pencil shares the common point [1:-1:0]).
    """
    X = monomial(PLANE_VARS, (1, 0, 0))
    Y = monomial(PLANE_VARS, (0, 1, 0))
    Z = monomial(PLANE_VARS, (0, 0, 1))
    yield Z
    yield Y
    yield X
    for k in range(1, 26):
        yield HomPoly.make(
            PLANE_VARS, {(1, 0, 0): Fraction(1), (0, 1, 0): Fraction(1), (0, 0, 1): Fraction(k)}
        )
    seen = set()
    for h in count(1):
        for a in range(-h, h + 1):
            for b in range(-h, h + 1):
                for c in range(-h, h + 1):
                    if max(abs(a), abs(b), abs(c)) != h or (a, b, c) == (0, 0, 0):
                        continue
                    g = math.gcd(math.gcd(abs(a), abs(b)), abs(c))
                    key = (a // g, b // g, c // g)
                    first = next(x for x in key if x)
                    if first < 0:
                        key = tuple(-x for x in key)
                    if key in seen:
                        continue
                    seen.add(key)
                    yield HomPoly.make(
                        PLANE_VARS,
                        {
                            (1, 0, 0): Fraction(key[0]),
                            (0, 1, 0): Fraction(key[1]),
                            (0, 0, 1): Fraction(key[2]),
                        },
                    )


def choose_uniformizer(curve: PlaneCurve, avoid) -> SurfaceFunction:
    """x = C / L^deg(C) for the first admissible line L.

    L is admissible when it passes through no avoided point and is not
    proportional to the curve itself; then ord_C(x) = 1 and the only other
    component of div(x) is L, which misses every avoided point.
    """
    avoid = list(avoid)
    for line in line_sequence():
        if line == curve.poly:
            continue
        if any(line.evaluate(p.coords) == 0 for p in avoid):
            continue
        return FactoredFunction.build(
            PLANE_VARS, 1, [(curve.poly, 1), (line, -curve.degree)]
        )
    raise AssertionError("unreachable: the line enumeration is exhaustive")


def uniformizer_line(x: SurfaceFunction, curve: PlaneCurve) -> HomPoly:
    for poly, exponent in x.factors:
        if poly != curve.poly:
            return poly
    raise ValidationError("uniformizer has no component besides the curve")


# ---------------------------------------------------------------------------
# restriction and local data

def ord_along_curve(f: SurfaceFunction, curve: PlaneCurve) -> int:
    return f.exponent_of(curve.poly)


def restrict_to_curve(
    f: SurfaceFunction, curve: PlaneCurve, param: CurveParam, x: SurfaceFunction
) -> tuple[int, P1Function]:
    """a = ord_C(f) and the cancelled restriction (x^-a f)|_C on P^1."""
    a = ord_along_curve(f, curve)
    g = f * (x**-a) if a else f
    forms = []
    for poly, exponent in g.factors:
        composed = substitute_param(poly, param.forms)
        if composed is None:
            raise RestrictionVanishes(
                f"component {poly} of the cancelled function restricts to zero"
            )
        forms.append((composed, exponent))
    return a, p1_function_from_forms(g.constant, forms)


@dataclass(frozen=True)
class LocalData:
    """Exact local data of a tuple of functions at a flag (C, P)."""

    curve: PlaneCurve | None
    point: ProjPoint2 | None
    a: tuple[int, ...]
    b: tuple[int, ...]
    restricted: tuple[P1Function, ...]
    preimage: ProjPoint1

    def pair(self, i: int, j: int) -> "LocalData":
        return self.select((i, j))

    def select(self, indices) -> "LocalData":
        return LocalData(
            self.curve,
            self.point,
            tuple(self.a[i] for i in indices),
            tuple(self.b[i] for i in indices),
            tuple(self.restricted[i] for i in indices),
            self.preimage,
        )


def local_data(
    fs,
    curve: PlaneCurve,
    point: ProjPoint2,
    x: SurfaceFunction,
    param: CurveParam | None = None,
) -> LocalData:
    """Local data (a, b, cancelled restrictions, preimage) at (C, P)."""
    fs = list(fs)
    if not curve.contains(point):
        raise PointNotOnCurve(f"{point} is not on {curve}")
    if x.exponent_of(curve.poly) != 1:
        raise ValidationError("uniformizer does not vanish to order one on the curve")
    for poly, _ in x.factors:
        if poly != curve.poly and poly.evaluate(point.coords) == 0:
            raise UniformizerThroughPoint(
                f"uniformizer component {poly} passes through {point}"
            )
    if param is None:
        param = parametrize(curve)
    pre = param.preimage(point)
    a_vec, b_vec, restricted = [], [], []
    for f in fs:
        a, r = restrict_to_curve(f, curve, param, x)
        a_vec.append(a)
        b_vec.append(r.ord_at(pre.coords))
        restricted.append(r)
    return LocalData(curve, point, tuple(a_vec), tuple(b_vec), tuple(restricted), pre)


# ---------------------------------------------------------------------------
# intersections and sites

def intersection_multiplicity(
    curve: PlaneCurve, other, point: ProjPoint2, param: CurveParam | None = None
) -> int:
    """Contact order of `other` (a curve or a form) with C at P, computed as
    the vanishing order of other composed with C's parametrization."""
    poly = other.poly if isinstance(other, PlaneCurve) else other
    if param is None:
        param = parametrize(curve)
    if not curve.contains(point):
        raise PointNotOnCurve(f"{point} is not on {curve}")
    composed = substitute_param(poly, param.forms)
    if composed is None:
        raise ValidationError("the other curve contains this one")
    pre = param.preimage(point)
    roots, _ = rational_roots(composed)
    return roots.get(pre.coords, 0)


def component_polys(fs) -> list[HomPoly]:
    seen = []
    for f in fs:
        for poly in f.component_polys():
            if poly not in seen:
                seen.append(poly)
    return sorted(seen, key=lambda p: p.sort_key())


def enumerate_sites(
    fs, curve: PlaneCurve, param: CurveParam | None = None, require_component: bool = True
) -> list[ProjPoint2]:
    """Points of C where some other divisor component meets it, in sorted
    order.  Raises NonRationalSite when any intersection is irrational."""
    fs = list(fs)
    polys = component_polys(fs)
    if require_component and curve.poly not in polys:
        raise ValidationError("the curve is not a component of any function")
    if param is None:
        param = parametrize(curve)
    points: set[ProjPoint2] = set()
    for poly in polys:
        if poly == curve.poly:
            continue
        composed = substitute_param(poly, param.forms)
        if composed is None:
            raise ValidationError(
                f"component {poly} is a multiple of the base curve"
            )
        roots, nonsplit = rational_roots(composed)
        if nonsplit:
            raise NonRationalSite(
                f"component {poly} meets {curve} at an irrational point"
            )
        for (u, v) in roots:
            points.add(param.point_at(u, v))
    return sorted(points, key=lambda p: p.sort_key())


# ---------------------------------------------------------------------------
# hypothesis validation

@dataclass(frozen=True)
class Diagnostics:
    violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def _smooth_at(poly: HomPoly, point: ProjPoint2) -> bool:
    return any(
        g is not None and g.evaluate(point.coords) != 0 for g in poly.gradient()
    )


def validate_normal_crossings(fs, curve: PlaneCurve, param: CurveParam | None = None) -> Diagnostics:
    """Along C: every site must be a transversal meeting of exactly two
    smooth components."""
    fs = list(fs)
    polys = component_polys(fs)
    violations: list[str] = []
    try:
        param = parametrize(curve, param)
    except (UnsupportedDegree, NoRationalPointFound) as exc:
        return Diagnostics((f"cannot parametrize {curve}: {exc}",))
    for poly in polys:
        if poly == curve.poly:
            continue
        composed = substitute_param(poly, param.forms)
        if composed is None:
            violations.append(f"component {poly} is a multiple of the base curve")
            continue
        roots, nonsplit = rational_roots(composed)
        if nonsplit:
            violations.append(
                f"component {poly} meets {curve} at an irrational point"
            )
        for (u, v), mult in sorted(roots.items()):
            point = param.point_at(u, v)
            if mult != 1:
                violations.append(
                    f"{poly} is tangent to {curve} at {point} (multiplicity {mult})"
                )
            through = [q for q in polys if q.evaluate(point.coords) == 0]
            if len(through) > 2:
                names = ", ".join(str(q) for q in through)
                violations.append(f"three or more components through {point}: {names}")
            for q in through:
                if not _smooth_at(q, point):
                    violations.append(f"component {q} is singular at {point}")
    return Diagnostics(tuple(dict.fromkeys(violations)))


def tangent_direction(poly: HomPoly, point: ProjPoint2) -> tuple[int, int, int] | None:
    grad = [
        g.evaluate(point.coords) if g is not None else Fraction(0)
        for g in poly.gradient()
    ]
    if all(v == 0 for v in grad):
        return None
    ints = _clear_denominators(grad)
    g = 0
    for c in ints:
        g = math.gcd(g, abs(c))
    ints = tuple(c // g for c in ints)
    first = next(c for c in ints if c)
    return tuple(-c for c in ints) if first < 0 else ints


def validate_distinct_tangents(fs, point: ProjPoint2) -> Diagnostics:
    """At P: every component through P smooth there, tangent lines pairwise
    distinct (the blown-up strict transforms then meet the exceptional curve
    at distinct points)."""
    fs = list(fs)
    violations: list[str] = []
    tangents: dict[tuple[int, int, int], HomPoly] = {}
    for poly in component_polys(fs):
        if poly.evaluate(point.coords) != 0:
            continue
        direction = tangent_direction(poly, point)
        if direction is None:
            violations.append(f"component {poly} is singular at {point}")
            continue
        if direction in tangents:
            violations.append(
                f"components {tangents[direction]} and {poly} share a tangent at {point}"
            )
        else:
            tangents[direction] = poly
    return Diagnostics(tuple(violations))


def components_through(fs, point: ProjPoint2) -> list[HomPoly]:
    return [
        poly
        for poly in component_polys(fs)
        if poly.evaluate(point.coords) == 0
    ]
