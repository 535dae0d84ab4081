"""Rational functions kept in factored form.

A FactoredFunction is a nonzero rational constant times a formal product of
normalized irreducible homogeneous factors with nonzero integer exponents.
The exponents must balance: sum(exponent * degree) = 0, so the function is a
genuine degree-0 rational function on P^1 or P^2.  Keeping the factorization
explicit is what makes every order-of-vanishing and every cancelled
restriction exact.

Factors of degree <= 3 are validated irreducible at construction; higher
degrees require trust=True (tracked per instance, not per factor).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import DegreeTooHigh, NotAUnit, ParseError, ValidationError
from .polynomials import (
    LINE_VARS,
    HomPoly,
    binary_gcd,
    content_and_normalized,
    format_rational,
    low_degree_irreducible,
    parse_poly,
    split_binary_form,
)


@dataclass(frozen=True)
class FactoredFunction:
    variables: tuple[str, ...]
    constant: Fraction
    factors: tuple[tuple[HomPoly, int], ...]  # sorted, exponents nonzero

    @staticmethod
    def build(
        variables: tuple[str, ...],
        constant,
        factors,
        trust: bool = False,
        validate_irreducible: bool = True,
    ) -> "FactoredFunction":
        constant = Fraction(constant)
        if constant == 0:
            raise ValidationError("the zero function is not representable")
        merged: dict[HomPoly, int] = {}
        for poly, exponent in factors:
            if exponent == 0:
                continue
            content, normalized = content_and_normalized(poly)
            constant *= content**exponent
            if normalized.degree == 0:
                continue  # a rational constant in factor position
            merged[normalized] = merged.get(normalized, 0) + exponent
        clean = {p: e for p, e in merged.items() if e != 0}
        if sum(e * p.degree for p, e in clean.items()) != 0:
            raise ValidationError("factor exponents do not sum to total degree zero")
        if validate_irreducible:
            for p in clean:
                if p.degree > 3:
                    if not trust:
                        raise DegreeTooHigh(
                            f"factor of degree {p.degree} needs an explicit trust flag"
                        )
                elif not low_degree_irreducible(p):
                    raise ValidationError(f"factor {p} is reducible over the rationals")
        ordered = tuple(sorted(clean.items(), key=lambda kv: kv[0].sort_key()))
        return FactoredFunction(variables, constant, ordered)

    @staticmethod
    def constant_function(value, variables: tuple[str, ...]) -> "FactoredFunction":
        return FactoredFunction.build(variables, value, [])

    def exponent_of(self, poly: HomPoly) -> int:
        for p, e in self.factors:
            if p == poly:
                return e
        return 0

    def __mul__(self, other: "FactoredFunction") -> "FactoredFunction":
        if self.variables != other.variables:
            raise ValidationError("cannot multiply functions over different variables")
        return FactoredFunction.build(
            self.variables,
            self.constant * other.constant,
            list(self.factors) + list(other.factors),
            validate_irreducible=False,
        )

    def __pow__(self, n: int) -> "FactoredFunction":
        return FactoredFunction.build(
            self.variables,
            self.constant**n,
            [(p, e * n) for p, e in self.factors],
            validate_irreducible=False,
        )

    def inverse(self) -> "FactoredFunction":
        return self**-1

    def ord_at(self, point: tuple[int, ...]) -> int:
        """Order of vanishing at a rational point: the exponent sum over
        factors vanishing there.  Distinct normalized irreducible factors
        share no rational root, so at most one linear factor vanishes."""
        total = 0
        for poly, exponent in self.factors:
            if poly.evaluate(point) == 0:
                if poly.degree > 1:
                    raise ValidationError(
                        f"trusted factor {poly} vanishes at a rational point; "
                        "it cannot be irreducible"
                    )
                total += exponent
        return total

    def value_at(self, point: tuple[int, ...]) -> Fraction:
        """Exact value at a rational point; NotAUnit unless ord is zero."""
        if self.ord_at(point) != 0:
            raise NotAUnit(f"function has a zero or pole at {point}")
        value = self.constant
        for poly, exponent in self.factors:
            fval = poly.evaluate(point)
            if fval == 0:
                raise NotAUnit(f"factor {poly} vanishes at {point}")
            value *= fval**exponent
        return value

    def is_constant(self) -> bool:
        return not self.factors

    def component_polys(self) -> tuple[HomPoly, ...]:
        return tuple(p for p, _ in self.factors)

    def has_linear_factors_only(self) -> bool:
        return all(p.degree == 1 for p, _ in self.factors)

    def __str__(self) -> str:
        if not self.factors:
            return format_rational(self.constant)
        body = " * ".join(f"({p})^{e}" for p, e in self.factors)
        if self.constant != 1:
            return f"{format_rational(self.constant)} * {body}"
        return body

    __repr__ = __str__


def product(functions, variables=None) -> FactoredFunction:
    functions = list(functions)
    if not functions:
        if variables is None:
            raise ValueError("empty product needs an explicit variable set")
        return FactoredFunction.constant_function(1, variables)
    out = functions[0]
    for f in functions[1:]:
        out = out * f
    return out


def power_product(functions, exponents) -> FactoredFunction:
    """prod f_i^{e_i}; the workhorse behind every symbol formula."""
    functions = list(functions)
    exponents = list(exponents)
    if len(functions) != len(exponents):
        raise ValueError("length mismatch")
    acc = FactoredFunction.constant_function(1, functions[0].variables)
    for f, e in zip(functions, exponents):
        if e:
            acc = acc * (f**e)
    return acc


def p1_function_from_forms(constant, forms_with_exponents) -> FactoredFunction:
    """Assemble a function on P^1 from arbitrary binary forms.

    Each form is split into rational linear factors times a rootless
    remainder; remainders from different forms are refined against each
    other with gcds so the stored factor list is pairwise coprime.  Used by
    restriction-to-curve, where composed forms arrive unfactored.
    """
    constant = Fraction(constant)
    linear: list[tuple[HomPoly, int]] = []
    remainders: list[tuple[HomPoly, int]] = []
    for form, exponent in forms_with_exponents:
        if exponent == 0:
            continue
        c, linears, remainder = split_binary_form(form)
        constant *= c**exponent
        linear.extend((p, m * exponent) for p, m in linears)
        if remainder is not None:
            remainders.append((remainder, exponent))
    # pairwise gcd refinement so no two remainder pieces share a factor
    changed = True
    while changed:
        changed = False
        for i in range(len(remainders)):
            for j in range(i + 1, len(remainders)):
                pi, ei = remainders[i]
                pj, ej = remainders[j]
                if pi == pj:
                    continue
                g = binary_gcd(pi, pj)
                if g is None:
                    continue
                pieces = []
                for p, e in (remainders[i], remainders[j]):
                    cofactor = _exact_divide_binary(p, g)
                    pieces.append((g, e))
                    if cofactor is not None:
                        pieces.append((cofactor, e))
                remainders = (
                    remainders[:i] + remainders[i + 1 : j] + remainders[j + 1 :] + pieces
                )
                changed = True
                break
            if changed:
                break
    return FactoredFunction.build(
        LINE_VARS, constant, linear + remainders, trust=True
    )


def _exact_divide_binary(p: HomPoly, d: HomPoly) -> HomPoly | None:
    """p / d for binary forms when d | p; None when the quotient is constant
    (the constant must be 1 for normalized inputs)."""
    from .polynomials import _binary_to_coeffs, _coeffs_to_binary, _poly_divmod

    num = _binary_to_coeffs(p)
    den = _binary_to_coeffs(d)
    tshift = 0
    while den and den[-1] == 0:
        den.pop()
        tshift += 1
    for _ in range(tshift):
        if num and num[-1] != 0:
            raise ValueError("inexact binary division")
        num.pop()
    q, r = _poly_divmod(num, den)
    if any(r):
        raise ValueError("inexact binary division")
    deg = p.degree - d.degree
    if deg == 0:
        return None
    while q and q[-1] == 0:
        q.pop()
    out = _coeffs_to_binary(q + [Fraction(0)] * (deg + 1 - len(q)), deg)
    assert out is not None
    return out


# ---------------------------------------------------------------------------
# factored-function text format: `3 * (s)^1 * (t)^-1`, `(Y + 2Z)^1 * (Z)^-1`

_CONST = re.compile(r"\s*(-?\d+)\s*(?:/\s*(\d+))?\s*$")


def _try_constant(piece: str) -> Fraction | None:
    stripped = piece.strip()
    while stripped.startswith("(") and stripped.endswith(")"):
        stripped = stripped[1:-1].strip()
    m = _CONST.match(stripped)
    if not m:
        return None
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) else 1
    if den == 0 or num == 0:
        raise ParseError(f"invalid constant {piece!r} in function")
    return Fraction(num, den)


def parse_function(text: str, variables: tuple[str, ...] | None = None, trust: bool = False) -> FactoredFunction:
    """Parse the factored surface syntax used by scene files and tests."""
    pieces = _split_top_level(text)
    constant = Fraction(1)
    factors: list[tuple[HomPoly, int]] = []
    for piece in pieces:
        piece = piece.strip()
        if not piece:
            raise ParseError(f"empty factor in function {text!r}")
        if not factors:
            c = _try_constant(piece)
            if c is not None:
                constant *= c
                continue
        poly_text, exponent = _split_exponent(piece)
        poly = parse_poly(poly_text, variables)
        if variables is None:
            variables = poly.variables
        factors.append((poly, exponent))
    if variables is None:
        variables = LINE_VARS
    return FactoredFunction.build(variables, constant, factors, trust=trust)


def _split_top_level(text: str) -> list[str]:
    out, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ParseError("unbalanced parentheses in function")
        elif ch == "*" and depth == 0:
            # exponent markers like )^-1 never contain top-level '*'
            out.append(text[start:i])
            start = i + 1
    if depth != 0:
        raise ParseError("unbalanced parentheses in function")
    out.append(text[start:])
    return out


def _split_exponent(piece: str) -> tuple[str, int]:
    m = re.match(r"\s*\((.*)\)\s*(?:\^\s*(-?\d+))?\s*$", piece, re.S)
    if not m:
        # bare polynomial without parentheses, exponent 1
        return piece, 1
    exponent = int(m.group(2)) if m.group(2) else 1
    return m.group(1), exponent
