"""Scene files: named functions, curves, and points for the CLI.

Format (whitespace-insensitive, `#` comments):

    space = P2

    [functions]
    f1 = (X)^1 * (Z)^-1
    f3 = 3 * (Y + 2*Z)^1 * (Z)^-1

    [curves]
    C = X
    D = X*Z - Y^2 param [s^2 : s*t : t^2]

    [points]
    P0 = [0:0:1]

    trust_irreducible = D

Functions are written in factored form (the factored representation is the
module contract, so the surface syntax exposes it directly); a leading
rational constant is optional.  P1 scenes use variables s, t and two-entry
points.  Curves may carry a user parametrization.  trust_irreducible lists
curve names whose polynomials are asserted irreducible above degree 3.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DegreeTooHigh, LocalSymbolError, ParseError, ValidationError
from .functions import FactoredFunction, parse_function
from .plane import CurveParam, PlaneCurve, ProjPoint2
from .polynomials import LINE_VARS, PLANE_VARS, parse_poly
from .projline import ProjPoint1


@dataclass
class Scene:
    space: str
    functions: dict[str, FactoredFunction] = field(default_factory=dict)
    curves: dict[str, PlaneCurve] = field(default_factory=dict)
    params: dict[str, CurveParam] = field(default_factory=dict)
    points: dict[str, ProjPoint1 | ProjPoint2] = field(default_factory=dict)
    trusted: tuple[str, ...] = ()

    def function(self, name: str) -> FactoredFunction:
        if name not in self.functions:
            raise ValidationError(f"unknown function {name!r}")
        return self.functions[name]

    def curve(self, name: str) -> PlaneCurve:
        if name not in self.curves:
            raise ValidationError(f"unknown curve {name!r}")
        return self.curves[name]

    def param(self, name: str) -> CurveParam | None:
        return self.params.get(name)

    def point(self, name: str):
        if name not in self.points:
            raise ValidationError(f"unknown point {name!r}")
        return self.points[name]


_POINT = re.compile(r"^\[([^\[\]]+)\]$")


def _parse_point(text: str, space: str):
    m = _POINT.match(text.strip())
    if not m:
        raise ParseError(f"malformed point {text!r}")
    entries = [e.strip() for e in m.group(1).split(":")]
    try:
        values = [Fraction(e) for e in entries]
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"malformed point coordinate in {text!r}") from exc
    if space == "P1":
        if len(values) != 2:
            raise ParseError(f"P1 points need two coordinates: {text!r}")
        scaled = _scale_to_int(values)
        return ProjPoint1.of(*scaled)
    if len(values) != 3:
        raise ParseError(f"P2 points need three coordinates: {text!r}")
    return ProjPoint2.of(*values)


def _scale_to_int(values):
    lcm = 1
    for v in values:
        lcm = lcm * v.denominator // _gcd(lcm, v.denominator)
    return [int(v * lcm) for v in values]


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def parse_scene(text: str) -> Scene:
    space: str | None = None
    section: str | None = None
    raw: dict[str, list[tuple[int, str, str, str]]] = {
        "functions": [],
        "curves": [],
        "points": [],
    }
    trusted: list[str] = []
    names_seen: set[str] = set()
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            section = line[1:-1].strip().lower()
            if section not in raw:
                raise ParseError(f"unknown section [{section}]", line=lineno)
            continue
        if "=" not in line:
            raise ParseError(f"expected 'name = value', got {line!r}", line=lineno)
        name, value = (part.strip() for part in line.split("=", 1))
        if not name:
            raise ParseError("missing name before '='", line=lineno)
        if name == "space":
            if value not in ("P1", "P2"):
                raise ParseError(f"space must be P1 or P2, got {value!r}", line=lineno)
            space = value
            continue
        if name == "trust_irreducible":
            trusted.extend(n.strip() for n in value.split(",") if n.strip())
            continue
        if section is None:
            raise ParseError(
                f"entry {name!r} appears before any section", line=lineno
            )
        if name in names_seen:
            raise ValidationError(f"duplicate name {name!r} (line {lineno})")
        names_seen.add(name)
        raw[section].append((lineno, section, name, value))
    if space is None:
        raise ParseError("scene does not declare its space (space = P1 or P2)")
    scene = Scene(space=space, trusted=tuple(trusted))
    for lineno, _, name, value in raw["curves"]:
        if space != "P2":
            raise ValidationError(f"curves need a P2 scene (line {lineno})")
        _parse_curve_entry(scene, name, value, lineno)
    for lineno, _, name, value in raw["functions"]:
        try:
            scene.functions[name] = _parse_function_entry(scene, value)
        except LocalSymbolError as exc:
            raise type(exc)(f"function {name!r} (line {lineno}): {exc}") from exc
    for lineno, _, name, value in raw["points"]:
        try:
            scene.points[name] = _parse_point(value, space)
        except LocalSymbolError as exc:
            raise type(exc)(f"point {name!r} (line {lineno}): {exc}") from exc
    for name in scene.trusted:
        if name not in scene.curves:
            raise ValidationError(
                f"trust_irreducible names unknown curve {name!r}"
            )
    return scene


def _parse_curve_entry(scene: Scene, name: str, value: str, lineno: int) -> None:
    param_text = None
    if " param " in value:
        value, param_text = value.split(" param ", 1)
    try:
        poly = parse_poly(value.strip(), PLANE_VARS)
        curve = PlaneCurve.of(poly, trust=name in scene.trusted)
    except LocalSymbolError as exc:
        raise type(exc)(f"curve {name!r} (line {lineno}): {exc}") from exc
    scene.curves[name] = curve
    if param_text is not None:
        m = _POINT.match(param_text.strip())
        if not m:
            raise ParseError(f"malformed parametrization for curve {name!r}", line=lineno)
        forms = []
        for component in m.group(1).split(":"):
            component = component.strip()
            if component == "0":
                forms.append(None)
            else:
                forms.append(parse_poly(component, LINE_VARS))
        scene.params[name] = CurveParam.of(curve, tuple(forms))


def format_scene(scene: Scene) -> str:
    """Canonical scene text; parse_scene(format_scene(s)) reproduces s."""
    lines = [f"space = {scene.space}"]
    if scene.functions:
        lines += ["", "[functions]"]
        lines += [f"{name} = {func}" for name, func in scene.functions.items()]
    if scene.curves:
        lines += ["", "[curves]"]
        for name, curve in scene.curves.items():
            entry = f"{name} = {curve.poly}"
            if name in scene.params:
                components = " : ".join(
                    str(f) if f is not None else "0"
                    for f in scene.params[name].forms
                )
                entry += f" param [{components}]"
            lines.append(entry)
    if scene.points:
        lines += ["", "[points]"]
        lines += [f"{name} = {point}" for name, point in scene.points.items()]
    if scene.trusted:
        lines += ["", f"trust_irreducible = {', '.join(scene.trusted)}"]
    return "\n".join(lines) + "\n"


def _parse_function_entry(scene: Scene, value: str) -> FactoredFunction:
    variables = LINE_VARS if scene.space == "P1" else PLANE_VARS
    try:
        return parse_function(value, variables)
    except DegreeTooHigh:
        f = parse_function(value, variables, trust=True)
        trusted_polys = {scene.curves[n].poly for n in scene.trusted}
        for poly, _ in f.factors:
            if poly.degree > 3 and poly not in trusted_polys:
                raise DegreeTooHigh(
                    f"factor {poly} of degree {poly.degree} is not listed in "
                    "trust_irreducible"
                )
        return f
