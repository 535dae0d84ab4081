"""Sparse homogeneous polynomials over the rationals.

Two variable families are supported: ternary forms in (X, Y, Z) for the
projective plane and binary forms in (s, t) for the projective line.  All
coefficients are exact `fractions.Fraction` values.  Monomials are ordered
graded-lexicographically with X > Y > Z and s > t; since every stored
polynomial is homogeneous this is plain lexicographic order on exponent
tuples.

The zero polynomial is never stored: operations that can produce zero
(substitution, addition of raw term dicts) signal it out of band.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import DegreeTooHigh, NonHomogeneous, ParseError, ZeroPolynomial

PLANE_VARS = ("X", "Y", "Z")
LINE_VARS = ("s", "t")

TermDict = dict[tuple[int, ...], Fraction]


@dataclass(frozen=True)
class HomPoly:
    """A nonzero homogeneous polynomial with exact rational coefficients."""

    variables: tuple[str, ...]
    terms: tuple[tuple[tuple[int, ...], Fraction], ...]  # grlex-descending

    @staticmethod
    def make(variables: tuple[str, ...], terms: TermDict) -> "HomPoly":
        clean = {e: Fraction(c) for e, c in terms.items() if c != 0}
        if not clean:
            raise ZeroPolynomial("the zero polynomial cannot be stored")
        degrees = {sum(e) for e in clean}
        if len(degrees) != 1:
            raise NonHomogeneous(f"mixed total degrees {sorted(degrees)}")
        if any(len(e) != len(variables) or min(e) < 0 for e in clean):
            raise ValueError("exponent tuples do not match the variable set")
        ordered = tuple(sorted(clean.items(), key=lambda kv: kv[0], reverse=True))
        return HomPoly(variables, ordered)

    @property
    def degree(self) -> int:
        return sum(self.terms[0][0])

    def term_dict(self) -> TermDict:
        return dict(self.terms)

    def leading_coefficient(self) -> Fraction:
        return self.terms[0][1]

    def coefficient(self, exponents: tuple[int, ...]) -> Fraction:
        for e, c in self.terms:
            if e == exponents:
                return c
        return Fraction(0)

    def evaluate(self, point: tuple) -> Fraction:
        if len(point) != len(self.variables):
            raise ValueError("point arity does not match variable set")
        coords = tuple(Fraction(x) for x in point)
        total = Fraction(0)
        for exps, coeff in self.terms:
            value = coeff
            for x, e in zip(coords, exps):
                if e:
                    value *= x**e
            total += value
        return total

    def partial(self, index: int) -> "HomPoly | None":
        out: TermDict = {}
        for exps, coeff in self.terms:
            if exps[index] == 0:
                continue
            reduced = list(exps)
            reduced[index] -= 1
            key = tuple(reduced)
            out[key] = out.get(key, Fraction(0)) + coeff * exps[index]
        out = {e: c for e, c in out.items() if c != 0}
        return HomPoly.make(self.variables, out) if out else None

    def gradient(self) -> tuple["HomPoly | None", ...]:
        return tuple(self.partial(i) for i in range(len(self.variables)))

    def __mul__(self, other: "HomPoly") -> "HomPoly":
        if self.variables != other.variables:
            raise ValueError("cannot multiply polynomials over different variables")
        return HomPoly.make(self.variables, mul_dicts(self.term_dict(), other.term_dict()))

    def __pow__(self, n: int) -> "HomPoly":
        if n < 0:
            raise ValueError("negative polynomial powers are not defined")
        result: TermDict = {(0,) * len(self.variables): Fraction(1)}
        base = self.term_dict()
        for _ in range(n):
            result = mul_dicts(result, base)
        return HomPoly.make(self.variables, result)

    def scale(self, c) -> "HomPoly":
        c = Fraction(c)
        if c == 0:
            raise ZeroPolynomial("scaling by zero")
        return HomPoly.make(self.variables, {e: k * c for e, k in self.terms})

    def sort_key(self):
        # total order used to sort factor lists deterministically
        return (self.degree, self.terms)

    def __str__(self) -> str:
        return format_poly(self)

    __repr__ = __str__


def add_dicts(a: TermDict, b: TermDict) -> TermDict:
    out = dict(a)
    for e, c in b.items():
        s = out.get(e, Fraction(0)) + c
        if s == 0:
            out.pop(e, None)
        else:
            out[e] = s
    return out


def mul_dicts(a: TermDict, b: TermDict) -> TermDict:
    out: TermDict = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            key = tuple(x + y for x, y in zip(ea, eb))
            s = out.get(key, Fraction(0)) + ca * cb
            if s == 0:
                out.pop(key, None)
            else:
                out[key] = s
    return out


def monomial(variables: tuple[str, ...], exps: tuple[int, ...], coeff=1) -> HomPoly:
    return HomPoly.make(variables, {exps: Fraction(coeff)})


def variable(variables: tuple[str, ...], name: str) -> HomPoly:
    exps = tuple(1 if v == name else 0 for v in variables)
    return monomial(variables, exps)


# ---------------------------------------------------------------------------
# normalization


def content_and_normalized(p: HomPoly) -> tuple[Fraction, HomPoly]:
    """Split p = content * primitive where the primitive part has coprime
    integer coefficients and positive leading coefficient."""
    denominators = [c.denominator for _, c in p.terms]
    lcm = 1
    for d in denominators:
        lcm = lcm * d // math.gcd(lcm, d)
    numerators = [abs(c.numerator * (lcm // c.denominator)) for _, c in p.terms]
    g = 0
    for n in numerators:
        g = math.gcd(g, n)
    content = Fraction(g, lcm)
    if p.leading_coefficient() < 0:
        content = -content
    return content, p.scale(1 / content)


def normalize(p: HomPoly) -> HomPoly:
    """Primitive integer coefficients, positive leading coefficient."""
    return content_and_normalized(p)[1]


# ---------------------------------------------------------------------------
# parsing and printing

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z])|([()+\-*/^]))")


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == m.start():
            rest = text[pos:].lstrip()
            if not rest:
                break
            raise ParseError(f"unexpected character {rest[0]!r} in polynomial", column=pos + 1)
        if m.group(1):
            out.append(("num", int(m.group(1))))
        elif m.group(2):
            out.append(("var", m.group(2)))
        else:
            out.append(("op", m.group(3)))
        pos = m.end()
    return out


class _PolyParser:
    """Recursive-descent parser for `X*Z - Y^2`, `(1/2)*X + Y`, `2X + 2Y`.

    Juxtaposition multiplies, `/` is only allowed between numeric literals,
    exponents are nonnegative integers.
    """

    def __init__(self, text: str, variables: tuple[str, ...]):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.variables = variables
        self.nvars = len(variables)

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def parse(self) -> TermDict:
        result = self.expr()
        if self.pos != len(self.tokens):
            raise ParseError(f"trailing input after polynomial (token {self.peek()[1]!r})")
        return result

    def expr(self) -> TermDict:
        sign = 1
        kind, val = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = {e: -c for e, c in acc.items()}
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                nxt = self.term()
                if val == "-":
                    nxt = {e: -c for e, c in nxt.items()}
                acc = add_dicts(acc, nxt)
            else:
                return acc

    def term(self) -> TermDict:
        acc = self.factor()
        while True:
            kind, val = self.peek()
            if kind == "op" and val == "*":
                self.take()
                acc = mul_dicts(acc, self.factor())
            elif kind in ("num", "var") or (kind == "op" and val == "("):
                acc = mul_dicts(acc, self.factor())
            else:
                return acc

    def factor(self) -> TermDict:
        base = self.base()
        kind, val = self.peek()
        if kind == "op" and val == "^":
            self.take()
            kind, val = self.take()
            if kind != "num":
                raise ParseError("exponent must be a nonnegative integer")
            result: TermDict = {(0,) * self.nvars: Fraction(1)}
            for _ in range(val):
                result = mul_dicts(result, base)
            return result
        return base

    def base(self) -> TermDict:
        kind, val = self.take()
        if kind == "num":
            num = val
            k, v = self.peek()
            if k == "op" and v == "/":
                self.take()
                k, v = self.take()
                if k != "num" or v == 0:
                    raise ParseError("malformed rational coefficient")
                return {(0,) * self.nvars: Fraction(num, v)}
            return {(0,) * self.nvars: Fraction(num)}
        if kind == "var":
            if val not in self.variables:
                raise ParseError(f"variable {val!r} not in {'/'.join(self.variables)}")
            exps = tuple(1 if w == val else 0 for w in self.variables)
            return {exps: Fraction(1)}
        if kind == "op" and val == "(":
            inner = self.expr()
            kind, val = self.take()
            if kind != "op" or val != ")":
                raise ParseError("missing closing parenthesis")
            return inner
        raise ParseError(f"unexpected token {val!r} in polynomial")


def infer_variables(text: str) -> tuple[str, ...]:
    letters = set(re.findall(r"[A-Za-z]", text))
    if letters <= set(PLANE_VARS) and letters & set(PLANE_VARS):
        return PLANE_VARS
    if letters <= set(LINE_VARS) and letters & set(LINE_VARS):
        return LINE_VARS
    raise ParseError(f"cannot infer variable family from letters {sorted(letters)}")


def parse_poly(text: str, variables: tuple[str, ...] | None = None) -> HomPoly:
    if variables is None:
        variables = infer_variables(text)
    terms = _PolyParser(text, variables).parse()
    if not terms:
        raise ZeroPolynomial(f"polynomial {text!r} is identically zero")
    try:
        return HomPoly.make(variables, terms)
    except NonHomogeneous as exc:
        raise ParseError(f"{text!r}: {exc}") from exc


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_poly(p: HomPoly) -> str:
    pieces = []
    for exps, coeff in p.terms:
        mono = "*".join(
            v if e == 1 else f"{v}^{e}" for v, e in zip(p.variables, exps) if e
        )
        if not mono:
            body = format_rational(abs(coeff))
        elif abs(coeff) == 1:
            body = mono
        else:
            c = format_rational(abs(coeff))
            if "/" in c:
                c = f"({c})"
            body = f"{c}*{mono}"
        pieces.append(("- " if coeff < 0 else "+ ") + body)
    text = " ".join(pieces)
    return text[2:] if text.startswith("+ ") else "-" + text[2:]


# ---------------------------------------------------------------------------
# resultants

def _coeff_rows(p: HomPoly, var_index: int) -> list[TermDict]:
    """Ascending coefficients of p in the eliminated variable; each entry is
    a term dict over the remaining variables (exponent of var_index zeroed)."""
    deg = max(e[var_index] for e, _ in p.terms)
    rows: list[TermDict] = [dict() for _ in range(deg + 1)]
    for exps, coeff in p.terms:
        k = exps[var_index]
        rest = tuple(0 if i == var_index else e for i, e in enumerate(exps))
        rows[k][rest] = rows[k].get(rest, Fraction(0)) + coeff
    return rows


def _det(matrix: list[list[TermDict]], nvars: int) -> TermDict:
    """Determinant over the polynomial ring, by minor expansion with
    memoization on the active column mask (no division needed)."""
    n = len(matrix)
    one: TermDict = {(0,) * nvars: Fraction(1)}
    if n == 0:
        return one
    memo: dict[int, TermDict] = {}

    def minor(row: int, mask: int) -> TermDict:
        if row == n:
            return one
        cached = memo.get(mask)
        if cached is not None:
            return cached
        total: TermDict = {}
        sign = 1
        for col in range(n):
            bit = 1 << col
            if not (mask & bit):
                continue
            entry = matrix[row][col]
            if entry:
                sub = minor(row + 1, mask & ~bit)
                contrib = mul_dicts(entry, sub)
                if sign < 0:
                    contrib = {e: -c for e, c in contrib.items()}
                total = add_dicts(total, contrib)
            sign = -sign
        memo[mask] = total
        return total

    return minor(0, (1 << n) - 1)


def resultant(p: HomPoly, q: HomPoly, eliminate: str) -> HomPoly | Fraction:
    """Sylvester resultant of p and q with respect to one variable.

    The matrix is written with ascending coefficient rows.  Returns a
    HomPoly in the remaining variables, or a Fraction (possibly 0) when the
    result is constant.  Zero exactly when p and q share a factor involving
    the eliminated variable.
    """
    if p.variables != q.variables:
        raise ValueError("resultant arguments over different variables")
    variables = p.variables
    idx = variables.index(eliminate)
    rows_p = _coeff_rows(p, idx)
    rows_q = _coeff_rows(q, idx)
    m, n = len(rows_p) - 1, len(rows_q) - 1
    size = m + n
    if size == 0:
        return Fraction(1)
    matrix: list[list[TermDict]] = []
    for i in range(n):
        matrix.append([dict() for _ in range(size)])
        for k, entry in enumerate(rows_p):
            matrix[-1][i + k] = entry
    for j in range(m):
        matrix.append([dict() for _ in range(size)])
        for k, entry in enumerate(rows_q):
            matrix[-1][j + k] = entry
    det = _det(matrix, len(variables))
    if not det:
        return Fraction(0)
    if all(sum(e) == 0 for e in det):
        return next(iter(det.values()))
    return HomPoly.make(variables, det)


# ---------------------------------------------------------------------------
# binary forms: gcd, rational roots, splitting

def _binary_to_coeffs(b: HomPoly) -> list[Fraction]:
    """Coefficients c[k] of s^k t^(d-k) for a binary form of degree d."""
    d = b.degree
    out = [Fraction(0)] * (d + 1)
    for (es, _et), c in b.terms:
        out[es] = c
    return out


def _coeffs_to_binary(coeffs: list[Fraction], degree: int) -> HomPoly | None:
    terms = {
        (k, degree - k): c for k, c in enumerate(coeffs) if c != 0
    }
    return HomPoly.make(LINE_VARS, terms) if terms else None


def _poly_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    """Univariate division (ascending coefficient lists, over Fraction)."""
    a = list(a)
    q = [Fraction(0)] * (max(len(a) - len(b) + 1, 0))
    while len(a) >= len(b) and any(a):
        while a and a[-1] == 0:
            a.pop()
        if len(a) < len(b):
            break
        shift = len(a) - len(b)
        factor = a[-1] / b[-1]
        q[shift] = factor
        for i, c in enumerate(b):
            a[shift + i] -= factor * c
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return q, a


def _univariate_gcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a, b = list(a), list(b)
    while any(b):
        _, r = _poly_divmod(a, b)
        a, b = b, r
    while a and a[-1] == 0:
        a.pop()
    if a:
        lead = a[-1]
        a = [c / lead for c in a]
    return a


def binary_gcd(p: HomPoly, q: HomPoly) -> HomPoly | None:
    """Gcd of two binary forms, normalized; None when they are coprime."""
    cp = _binary_to_coeffs(p)
    cq = _binary_to_coeffs(q)

    def strip_t(c: list[Fraction]) -> tuple[int, list[Fraction]]:
        # t^k divides the form exactly when the low s-coefficients vanish...
        # s^k: coefficient list is in s, so t-power = trailing zeros at the top
        k = 0
        while c and c[-1] == 0:
            c = c[:-1]
            k += 1
        return k, c

    # t | form  <=>  the coefficient of s^d vanishes
    kp, cp = strip_t(cp)
    kq, cq = strip_t(cq)
    k = min(kp, kq)
    g = _univariate_gcd(cp, cq)
    if len(g) <= 1 and k == 0:
        return None
    if not g:
        g = [Fraction(1)]
    gdeg = len(g) - 1 + k
    coeffs = g + [Fraction(0)] * (gdeg + 1 - len(g))
    form = _coeffs_to_binary(coeffs, gdeg)
    assert form is not None
    return normalize(form)


def _int_divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i != n // i:
                large.append(n // i)
        i += 1
    return small + large[::-1]


def rational_roots(b: HomPoly) -> tuple[dict, bool]:
    """All rational projective roots of a binary form with multiplicities.

    Returns ({ProjPoint-like (u, v) tuple: multiplicity}, nonsplit) where
    nonsplit is True when a factor of degree >= 2 irreducible over the
    rationals remains.  Root tuples are coprime with first nonzero entry
    positive.
    """
    if b.variables != LINE_VARS:
        raise ValueError("rational_roots expects a binary form in (s, t)")
    coeffs = _binary_to_coeffs(b)
    roots: dict[tuple[int, int], int] = {}
    # root [1:0] (t = 0): multiplicity = number of leading s-coefficients...
    # t^m | b  <=>  top coefficients of s vanish from the top down
    m = 0
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
        m += 1
    if m:
        roots[(1, 0)] = m
    # dehomogenized polynomial p(s) = b(s, 1), ascending
    p = list(coeffs)
    # strip s^k: roots at [0:1]
    k = 0
    while p and p[0] == 0:
        p.pop(0)
        k += 1
    if k:
        roots[(0, 1)] = k
    if len(p) > 1:
        # integer-primitive version for the rational root theorem
        lcm = 1
        for c in p:
            lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
        ip = [int(c * lcm) for c in p]
        g = 0
        for c in ip:
            g = math.gcd(g, c)
        ip = [c // g for c in ip]
        candidates = []
        for u in _int_divisors(ip[0]):
            for v in _int_divisors(ip[-1]):
                if math.gcd(u, v) == 1:
                    candidates.extend([Fraction(u, v), Fraction(-u, v)])
        for r in candidates:
            mult = 0
            while len(p) > 1:
                value = Fraction(0)
                for c in reversed(p):
                    value = value * r + c
                if value != 0:
                    break
                # deflate by (s - r)
                out = [Fraction(0)] * (len(p) - 1)
                carry = p[-1]
                for i in range(len(p) - 2, -1, -1):
                    out[i] = carry
                    carry = p[i] + carry * r
                p = out
                mult += 1
            if mult:
                u, v = r.numerator, r.denominator
                key = (u, v) if (u > 0 or (u == 0 and v > 0)) else (-u, -v)
                roots[key] = roots.get(key, 0) + mult
    nonsplit = len(p) > 1
    return roots, nonsplit


def split_binary_form(b: HomPoly) -> tuple[Fraction, list[tuple[HomPoly, int]], HomPoly | None]:
    """Factor a binary form as constant * prod(linear^mult) * remainder.

    The linear pieces are normalized primitive forms v*s - u*t for each
    rational root [u:v]; the remainder has no rational roots (None when the
    form splits completely).  Exact: the product is asserted to reproduce b.
    """
    roots, nonsplit = rational_roots(b)
    factors: list[tuple[HomPoly, int]] = []
    product: TermDict = {(0, 0): Fraction(1)}
    for (u, v), mult in sorted(roots.items()):
        linear = normalize(HomPoly.make(LINE_VARS, {(1, 0): Fraction(v), (0, 1): Fraction(-u)}))
        factors.append((linear, mult))
        for _ in range(mult):
            product = mul_dicts(product, linear.term_dict())
    remainder: HomPoly | None = None
    if nonsplit:
        # quotient of the dehomogenizations, re-homogenized; exact because
        # the remainder carries no root at [1:0]
        num = _binary_to_coeffs(b)
        den = _binary_to_coeffs(HomPoly.make(LINE_VARS, product))
        while den and den[-1] == 0:
            den.pop()
        q, r = _poly_divmod(num, den)
        if any(r):
            raise ValueError("internal error: linear factors do not divide the form")
        while q and q[-1] == 0:
            q.pop()
        rem_deg = b.degree - sum(m for _, m in factors)
        remainder = _coeffs_to_binary(q + [Fraction(0)] * (rem_deg + 1 - len(q)), rem_deg)
        assert remainder is not None
        remainder = normalize(remainder)
    check: TermDict = dict(product)
    if remainder is not None:
        check = mul_dicts(check, remainder.term_dict())
    check_poly = HomPoly.make(LINE_VARS, check)
    lead_exp, lead_coeff = check_poly.terms[0]
    constant = b.coefficient(lead_exp) / lead_coeff
    rebuilt = {e: c * constant for e, c in check_poly.terms}
    if rebuilt != b.term_dict():
        raise ValueError("internal error: binary form splitting is inexact")
    return constant, factors, remainder


# ---------------------------------------------------------------------------
# substitution

def substitute_param(p: HomPoly, forms: tuple[HomPoly | None, HomPoly | None, HomPoly | None]) -> HomPoly | None:
    """Compose a ternary form with a parametrization triple of binary forms.

    Returns the binary form p(f1, f2, f3), or None when the composition is
    identically zero.  Components may be None (the zero form), but not all.
    """
    if p.variables != PLANE_VARS:
        raise ValueError("substitute_param expects a ternary form")
    degrees = {f.degree for f in forms if f is not None}
    if not degrees or len(degrees) != 1:
        raise ValueError("parametrization components must share one degree")
    acc: TermDict = {}
    for exps, coeff in p.terms:
        term: TermDict = {(0, 0): coeff}
        dead = False
        for f, e in zip(forms, exps):
            if e == 0:
                continue
            if f is None:
                dead = True
                break
            term = mul_dicts(term, (f**e).term_dict())
        if not dead:
            acc = add_dicts(acc, term)
    return HomPoly.make(LINE_VARS, acc) if acc else None


def substitute_linear(p: HomPoly, index: int, replacement: TermDict) -> TermDict:
    """Substitute variables[index] := replacement (a term dict over the same
    variable tuple) into p; used by the cubic linear-factor search.  An empty
    replacement dict substitutes zero."""
    nv = len(p.variables)
    acc: TermDict = {}
    for exps, coeff in p.terms:
        rest = tuple(0 if i == index else e for i, e in enumerate(exps))
        term: TermDict = {rest: coeff}
        e = exps[index]
        if e:
            if not replacement:
                continue
            powed: TermDict = {(0,) * nv: Fraction(1)}
            for _ in range(e):
                powed = mul_dicts(powed, replacement)
            term = mul_dicts(term, powed)
        acc = add_dicts(acc, term)
    return acc


# ---------------------------------------------------------------------------
# irreducibility up to degree 3

def _binary_irreducible(p: HomPoly) -> bool:
    if p.degree <= 1:
        return True
    roots, _ = rational_roots(p)
    # degree 2 or 3: reducible over Q exactly when a rational root exists
    return not roots


def _conic_rank3(p: HomPoly) -> bool:
    def c(i: int, j: int) -> Fraction:
        exps = [0, 0, 0]
        exps[i] += 1
        exps[j] += 1
        coeff = p.coefficient(tuple(exps))
        return coeff if i == j else coeff / 2

    m = [[c(i, j) for j in range(3)] for i in range(3)]
    det = (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )
    return det != 0


def _ternary_cubic_has_linear_factor(p: HomPoly) -> bool:
    # factor purely in (Y, Z): shows up as a common factor of the
    # X-coefficient rows
    rows = _coeff_rows(p, 0)
    common: HomPoly | None = None
    for row in rows:
        if not row:
            continue
        form = HomPoly.make(PLANE_VARS, row)
        if common is None:
            common = form
            continue
        common = _plane_yz_gcd(common, form)
        if common is None:
            break
    if common is not None and common.degree >= 1:
        return True
    if not any(e[0] for e, _ in p.terms):
        # no X at all: p is a binary cubic in (Y, Z)
        return not _binary_irreducible(_as_binary_yz(p))
    # factors X + beta*Y + gamma*Z: beta must be a rational root of
    # u -> p(-u, 1, 0) and gamma of u -> p(-u, 0, 1)
    betas = _roots_of_specialization(p, (0, 1, 0))
    gammas = _roots_of_specialization(p, (0, 0, 1))
    for beta in betas:
        for gamma in gammas:
            replacement: TermDict = {}
            if beta:
                replacement[(0, 1, 0)] = -beta
            if gamma:
                replacement[(0, 0, 1)] = -gamma
            image = substitute_linear(p, 0, replacement)
            if not image:
                return True
    return False


def _as_binary_yz(p: HomPoly) -> HomPoly:
    terms = {(e[1], e[2]): c for e, c in p.terms}
    return HomPoly.make(LINE_VARS, terms)


def _plane_yz_gcd(a: HomPoly, b: HomPoly) -> HomPoly | None:
    """Gcd of two forms in (Y, Z) only (constant -> None)."""
    if all(sum(e) == 0 for e, _ in a.terms) or all(sum(e) == 0 for e, _ in b.terms):
        return None
    g = binary_gcd(_as_binary_yz(a), _as_binary_yz(b))
    if g is None:
        return None
    terms = {(0, e[0], e[1]): c for e, c in g.terms}
    return HomPoly.make(PLANE_VARS, terms)


def _roots_of_specialization(p: HomPoly, direction: tuple[int, int, int]) -> list[Fraction]:
    """Rational roots of the univariate u -> p(-u, d1, d2) for a direction
    (0, d1, d2); candidates for the Y/Z part of a monic linear factor."""
    coeffs: dict[int, Fraction] = {}
    for exps, coeff in p.terms:
        k = exps[0]
        value = coeff * Fraction(-1) ** k
        dead = False
        for i in (1, 2):
            if exps[i]:
                if direction[i] == 0:
                    dead = True
                    break
                value *= Fraction(direction[i]) ** exps[i]
        if dead:
            continue
        coeffs[k] = coeffs.get(k, Fraction(0)) + value
    ascending = [coeffs.get(k, Fraction(0)) for k in range(max(coeffs) + 1)] if coeffs else []
    while ascending and ascending[-1] == 0:
        ascending.pop()
    if not ascending:
        return []
    deg = len(ascending) - 1
    terms = {(k, deg - k): c for k, c in enumerate(ascending) if c != 0}
    if not terms:
        return []
    form = HomPoly.make(LINE_VARS, terms)
    roots, _ = rational_roots(form)
    return [Fraction(u, v) for (u, v) in roots if v != 0]


def low_degree_irreducible(p: HomPoly) -> bool:
    """Irreducibility over Q for forms of degree <= 3.

    Linear forms are irreducible; conics are accepted exactly when their
    symmetric matrix has rank 3 (smooth conic); ternary cubics are searched
    for a rational linear factor.  Degree > 3 raises DegreeTooHigh (callers
    may assert irreducibility with a trust flag instead).
    """
    if p.degree > 3:
        raise DegreeTooHigh(f"cannot decide irreducibility at degree {p.degree}")
    if p.degree <= 1:
        return p.degree == 1
    if p.variables == LINE_VARS:
        return _binary_irreducible(p)
    if p.degree == 2:
        return _conic_rank3(p)
    return not _ternary_cubic_has_linear_factor(p)
