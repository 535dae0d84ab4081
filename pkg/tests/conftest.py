"""Shared builders: worked configurations, random split functions, random
line arrangements, and synthetic local data for the symbol identities."""

from __future__ import annotations

import random
from fractions import Fraction
from pathlib import Path

from localsymbols.functions import FactoredFunction, parse_function
from localsymbols.plane import LocalData, PlaneCurve, ProjPoint2
from localsymbols.polynomials import (
    LINE_VARS,
    PLANE_VARS,
    HomPoly,
    normalize,
    parse_poly,
)
from localsymbols.projline import ProjPoint1

DATA_DIR = Path(__file__).parent / "data"


def pf(text: str, variables=None) -> FactoredFunction:
    return parse_function(text, variables)


def pp(text: str) -> HomPoly:
    return parse_poly(text)


def point2(x, y, z) -> ProjPoint2:
    return ProjPoint2.of(x, y, z)


def point1(u, v) -> ProjPoint1:
    return ProjPoint1.of(u, v)


# ---------------------------------------------------------------------------
# worked configurations


def config_a():
    fs = [pf("(X)^1*(Z)^-1"), pf("(Y)^1*(Z)^-1"), pf("(Y + 2*Z)^1*(Z)^-1")]
    return fs, PlaneCurve.of(pp("X"))


def config_b():
    fs = [
        pf("(X)^1*(Z)^-1"),
        pf("(Y)^1*(Z)^-1"),
        pf("(X)^1*(X + Y + Z)^-1"),
        pf("(Y + 2*Z)^1*(Z)^-1"),
    ]
    return fs, PlaneCurve.of(pp("X"))


# ---------------------------------------------------------------------------
# random split functions on the line


def random_split_function(rng: random.Random, max_factors: int = 6) -> FactoredFunction:
    n = rng.randint(1, max_factors)
    factors: list[tuple[HomPoly, int]] = []
    total = 0
    for _ in range(n):
        while True:
            a, b = rng.randint(-9, 9), rng.randint(-9, 9)
            if (a, b) != (0, 0):
                break
        e = rng.choice([-3, -2, -1, 1, 2, 3])
        factors.append((HomPoly.make(LINE_VARS, {(1, 0): Fraction(a), (0, 1): Fraction(b)}), e))
        total += e
    if total:
        factors.append((HomPoly.make(LINE_VARS, {(0, 1): Fraction(1)}), -total))
    constant = Fraction(rng.choice([c for c in range(-9, 10) if c]), rng.randint(1, 9))
    return FactoredFunction.build(LINE_VARS, constant, factors)


# ---------------------------------------------------------------------------
# random line arrangements on the plane


def random_lines(rng: random.Random, count: int, through=None) -> list[HomPoly]:
    lines: list[HomPoly] = []
    seen = set()
    while len(lines) < count:
        if through is not None:
            # lines through [0:0:1] have no Z coefficient
            a, b, c = rng.randint(-3, 3), rng.randint(-3, 3), 0
        else:
            a, b, c = rng.randint(-3, 3), rng.randint(-3, 3), rng.randint(-3, 3)
        terms = {
            e: Fraction(v)
            for e, v in (((1, 0, 0), a), ((0, 1, 0), b), ((0, 0, 1), c))
            if v
        }
        if not terms:
            continue
        line = normalize(HomPoly.make(PLANE_VARS, terms))
        if line not in seen:
            seen.add(line)
            lines.append(line)
    return lines


def functions_from_lines(rng: random.Random, lines, nfuncs: int):
    """nfuncs degree-zero functions whose components are the given lines;
    the first function always contains lines[0]."""
    balancer = lines[-1]
    fs = []
    for i in range(nfuncs):
        pool = lines[:-1]
        k = rng.randint(1, len(pool))
        chosen = rng.sample(pool, k)
        if i == 0 and lines[0] not in chosen:
            chosen.append(lines[0])
        factors = [(line, rng.choice([-2, -1, 1, 2])) for line in chosen]
        total = sum(e for _, e in factors)
        if total:
            factors.append((balancer, -total))
        fs.append(FactoredFunction.build(PLANE_VARS, 1, factors))
    return fs


def random_first_type_arrangement(rng: random.Random, nfuncs: int, force_violation: bool = False):
    """(functions, base curve) from 4-6 random lines; optionally force a
    concurrency through [1:1:1] so the crossing hypothesis fails."""
    while True:
        lines = random_lines(rng, rng.randint(4, 6))
        if force_violation:
            # three distinct lines through one point, all kept as components
            through = [pp("X - Z"), pp("Y - Z"), pp("X + Y - 2*Z")]
            lines = through + lines[:2]
        try:
            fs = functions_from_lines(rng, lines, nfuncs)
            if force_violation:
                extra = (
                    pf("(X - Z)^1*(Y - Z)^1*(X + Y - 2*Z)^1*(Z)^-3") if nfuncs == 3
                    else pf("(X - Z)^1*(Y - Z)^1*(X + Y - 2*Z)^1*(Z)^-3")
                )
                fs[-1] = fs[-1] * extra
            curve = PlaneCurve.of(lines[0])
            return fs, curve
        except Exception:
            continue


def random_second_type_arrangement(rng: random.Random, nfuncs: int):
    """(functions, point) with several components through the fixed point
    [0:0:1] and distinct tangents there."""
    while True:
        through = random_lines(rng, rng.randint(2, 3), through=True)
        others = [l for l in random_lines(rng, 3) if l not in through]
        if len(others) < 2:
            continue
        lines = through + others
        try:
            fs = functions_from_lines(rng, lines, nfuncs)
            return fs, ProjPoint2.of(0, 0, 1)
        except Exception:
            continue


# ---------------------------------------------------------------------------
# synthetic local data


def synthetic_data(rng: random.Random, size: int, bound: int = 3) -> LocalData:
    """Local data with prescribed vanishing orders and random unit values:
    r_k = u_k * (s/t)^(b_k) * ((s+t)/t)^(m_k), point [0:1], base [1:1]."""
    s = HomPoly.make(LINE_VARS, {(1, 0): Fraction(1)})
    t = HomPoly.make(LINE_VARS, {(0, 1): Fraction(1)})
    st = HomPoly.make(LINE_VARS, {(1, 0): Fraction(1), (0, 1): Fraction(1)})
    a = tuple(rng.randint(-bound, bound) for _ in range(size))
    b = tuple(rng.randint(-bound, bound) for _ in range(size))
    restricted = []
    for k in range(size):
        unit = Fraction(rng.choice([c for c in range(-5, 6) if c]), rng.randint(1, 5))
        m = rng.randint(-2, 2)
        restricted.append(
            FactoredFunction.build(
                LINE_VARS, unit, [(s, b[k]), (t, -b[k] - m), (st, m)]
            )
        )
    return LocalData(None, None, a, b, tuple(restricted), ProjPoint1.of(0, 1))


SYNTHETIC_BASE = ProjPoint1.of(1, 1)
