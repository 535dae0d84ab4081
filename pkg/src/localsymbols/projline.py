"""Divisors and local symbols on the projective line.

Points are pairs of coprime integers with the first nonzero entry positive,
so points at infinity need no special casing.  The two symbols here are the
multiplicative local symbol attached to two functions and a point,

    {f, g}_P = (-1)^(ab) * (f^b / g^a)(P),   a = ord_P(f), b = ord_P(g),

and its two-point variant depending on a point of interest P and a base
point Q away from both divisors,

    {f, g}_P^Q = (-1)^(a1 a2) * (f^a2 / g^a1)(P) / (f^a2 / g^a1)(Q).

Both are exact nonzero rationals for split (linear-factor) inputs, and the
product of either over all points of P^1 is exactly 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    BasePointOnDivisor,
    CoincidentPoints,
    NonSplitFunction,
    ValidationError,
)
from .functions import FactoredFunction, power_product

P1Function = FactoredFunction


@dataclass(frozen=True)
class ProjPoint1:
    """A rational point of P^1 in normalized primitive-integer form."""

    u: int
    v: int

    @staticmethod
    def of(u: int, v: int) -> "ProjPoint1":
        if u == 0 and v == 0:
            raise ValidationError("(0, 0) is not a projective point")
        g = math.gcd(abs(u), abs(v))
        u, v = u // g, v // g
        first = u if u != 0 else v
        if first < 0:
            u, v = -u, -v
        return ProjPoint1(u, v)

    @staticmethod
    def from_rational(z) -> "ProjPoint1":
        """Affine coordinate z = s/t mapped to [z : 1]."""
        z = Fraction(z)
        return ProjPoint1.of(z.numerator, z.denominator)

    @property
    def coords(self) -> tuple[int, int]:
        return (self.u, self.v)

    def __str__(self) -> str:
        return f"[{self.u}:{self.v}]"

    __repr__ = __str__

    def sort_key(self):
        return (self.u, self.v)


INFINITY = ProjPoint1.of(1, 0)


@dataclass(frozen=True)
class Divisor1:
    """Zeros and poles with multiplicities; multiplicities sum to zero."""

    entries: tuple[tuple[ProjPoint1, int], ...]

    @staticmethod
    def of(entries) -> "Divisor1":
        merged: dict[ProjPoint1, int] = {}
        for point, mult in entries:
            merged[point] = merged.get(point, 0) + mult
        clean = {p: m for p, m in merged.items() if m}
        if sum(clean.values()) != 0:
            raise ValidationError("divisor multiplicities do not sum to zero")
        ordered = tuple(sorted(clean.items(), key=lambda kv: kv[0].sort_key()))
        return Divisor1(ordered)

    @property
    def support(self) -> tuple[ProjPoint1, ...]:
        return tuple(p for p, _ in self.entries)

    def multiplicity(self, point: ProjPoint1) -> int:
        for p, m in self.entries:
            if p == point:
                return m
        return 0


def ord_at(f: P1Function, point: ProjPoint1) -> int:
    return f.ord_at(point.coords)


def unit_value(f: P1Function, point: ProjPoint1) -> Fraction:
    return f.value_at(point.coords)


def divisor(f: P1Function) -> Divisor1:
    if not f.has_linear_factors_only():
        raise NonSplitFunction("divisor support contains irrational points")
    entries = []
    for poly, exponent in f.factors:
        # a normalized linear form a*s + b*t has integer coefficients and
        # vanishes exactly at [-b : a]
        a = int(poly.coefficient((1, 0)))
        b = int(poly.coefficient((0, 1)))
        entries.append((ProjPoint1.of(-b, a), exponent))
    return Divisor1.of(entries)


def tame_symbol(f: P1Function, g: P1Function, point: ProjPoint1) -> Fraction:
    """(-1)^(ab) (f^b/g^a)(P); the combination is a unit at P by design."""
    a = ord_at(f, point)
    b = ord_at(g, point)
    combo = power_product([f, g], [b, -a])
    value = unit_value(combo, point)
    return -value if (a * b) % 2 else value


def bilocal_symbol(
    f1: P1Function, f2: P1Function, p: ProjPoint1, q: ProjPoint1
) -> Fraction:
    """The two-point symbol; Q must avoid both divisors and differ from P."""
    if p == q:
        raise CoincidentPoints(f"point of interest and base point coincide at {p}")
    if ord_at(f1, q) != 0 or ord_at(f2, q) != 0:
        raise BasePointOnDivisor(f"base point {q} lies on a divisor support")
    a1 = ord_at(f1, p)
    a2 = ord_at(f2, p)
    combo = power_product([f1, f2], [a2, -a1])
    value = unit_value(combo, p) / unit_value(combo, q)
    return -value if (a1 * a2) % 2 else value


@dataclass(frozen=True)
class WeilReport:
    sites: tuple[tuple[ProjPoint1, Fraction], ...]
    product: Fraction

    @property
    def passed(self) -> bool:
        return self.product == 1


def check_weil(f: P1Function, g: P1Function) -> WeilReport:
    """Tame symbols over every point of |div f| u |div g|, and their product."""
    points = sorted(
        set(divisor(f).support) | set(divisor(g).support), key=lambda p: p.sort_key()
    )
    sites = []
    prod = Fraction(1)
    for point in points:
        value = tame_symbol(f, g, point)
        sites.append((point, value))
        prod *= value
    return WeilReport(tuple(sites), prod)
