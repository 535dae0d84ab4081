"""Command-line interface: exact symbol evaluation and reciprocity reports.

Exit codes: 0 pass, 1 reciprocity (or numeric comparison) failure,
2 hypothesis violation, 3 input error.  Output is deterministic: sites are
sorted, rationals print as num/den with positive denominator, and --json
mirrors the text content field for field.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import ktheory, numeric, symbols
from .errors import HypothesisViolation, InternalInconsistency, LocalSymbolError
from .plane import ProjPoint2
from .polynomials import format_rational
from .projline import ProjPoint1, check_weil
from .scene import Scene, parse_scene

PASS, FAIL, HYPOTHESIS, INPUT_ERROR = 0, 1, 2, 3


def _rat(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _rat_json(q: Fraction) -> dict:
    return {"num": q.numerator, "den": q.denominator}


class Output:
    def __init__(self, as_json: bool):
        self.as_json = as_json
        self.lines: list[str] = []
        self.obj: dict = {}

    def field(self, key: str, text_value, json_value=None) -> None:
        self.lines.append(f"{key}: {text_value}")
        self.obj[key.replace(" ", "_")] = (
            json_value if json_value is not None else text_value
        )

    def emit(self) -> None:
        if self.as_json:
            print(json.dumps(self.obj, indent=None, separators=(", ", ": ")))
        else:
            print("\n".join(self.lines))


def _load_scene(path: str) -> Scene:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return parse_scene(handle.read())
    except OSError as exc:
        raise LocalSymbolError(f"cannot read scene file {path}: {exc}") from exc


def _functions(scene: Scene, csv: str, count: int):
    names = [n.strip() for n in csv.split(",") if n.strip()]
    if len(names) != count:
        raise LocalSymbolError(f"expected {count} function names, got {len(names)}")
    return [scene.function(n) for n in names]


def _report_output(report, out: Output, where_key: str, where_value: str) -> int:
    out.field("law", report.law)
    out.field(where_key, where_value)
    sites_json = []
    for label, value in report.sites:
        out.lines.append(f"site {label}: {format_rational(value)}")
        sites_json.append({"site": label, "value": _rat_json(value)})
    out.obj["sites"] = sites_json
    out.field("product", _rat(report.product), _rat_json(report.product))
    ok = report.hypotheses.ok
    out.field("hypotheses", "ok" if ok else "violated", {
        "ok": ok,
        "violations": list(report.hypotheses.violations),
    })
    for violation in report.hypotheses.violations:
        out.lines.append(f"violation: {violation}")
    if not ok:
        out.field("result", "HYPOTHESIS-VIOLATION", False)
        code = HYPOTHESIS
    elif report.product != 1:
        out.field("result", "FAIL", False)
        code = FAIL
    else:
        out.field("result", "PASS", True)
        code = PASS
    out.obj["pass"] = code == PASS
    return code


# ---------------------------------------------------------------------------
# symbol commands

_SYMBOL_ARITY = {
    "tame": 2,
    "bilocal": 2,
    "parshin": 3,
    "parshin2": 3,
    "four1": 4,
    "four2": 4,
    "ksym": 4,
    "sign": 4,
}

_SYMBOL_OPS = {
    "parshin": symbols.parshin_symbol,
    "parshin2": symbols.parshin_symbol_second,
    "four1": symbols.four_symbol_first,
    "four2": symbols.four_symbol_second,
    "ksym": ktheory.k_symbol_first,
    "sign": ktheory.sign_symbol_first,
}


def _cmd_symbol(args) -> int:
    scene = _load_scene(args.scene)
    out = Output(args.json)
    name = args.kind
    fs = _functions(scene, args.functions, _SYMBOL_ARITY[name])
    out.field("symbol", name)
    if name == "tame":
        point = scene.point(args.point)
        _require_point1(point)
        from .projline import tame_symbol

        value = tame_symbol(fs[0], fs[1], point)
        out.field("point", str(point))
    elif name == "bilocal":
        if not args.base_point:
            raise LocalSymbolError("symbol bilocal needs --base-point")
        point = scene.point(args.point)
        base = scene.point(args.base_point)
        _require_point1(point)
        _require_point1(base)
        from .projline import bilocal_symbol

        value = bilocal_symbol(fs[0], fs[1], point, base)
        out.field("point", str(point))
        out.field("base point", str(base))
    else:
        curve = scene.curve(args.curve)
        point = scene.point(args.point)
        _require_point2(point)
        value = _SYMBOL_OPS[name](
            *fs, curve, point, param=scene.param(args.curve)
        )
        out.field("curve", str(curve))
        out.field("point", str(point))
    out.field("value", format_rational(value), _rat_json(value))
    out.emit()
    return PASS


def _require_point1(point) -> None:
    if not isinstance(point, ProjPoint1):
        raise LocalSymbolError("this command needs a P1 point")


def _require_point2(point) -> None:
    if not isinstance(point, ProjPoint2):
        raise LocalSymbolError("this command needs a P2 point")


# ---------------------------------------------------------------------------
# check commands


def _cmd_check(args) -> int:
    scene = _load_scene(args.scene)
    out = Output(args.json)
    kind = args.kind
    if kind == "weil":
        fs = _functions(scene, args.functions, 2)
        report = check_weil(fs[0], fs[1])
        out.field("law", "weil")
        sites_json = []
        for point, value in report.sites:
            out.lines.append(f"site {point}: {format_rational(value)}")
            sites_json.append({"site": str(point), "value": _rat_json(value)})
        out.obj["sites"] = sites_json
        out.field("product", _rat(report.product), _rat_json(report.product))
        out.field("result", "PASS" if report.passed else "FAIL", report.passed)
        out.obj["pass"] = report.passed
        out.emit()
        return PASS if report.passed else FAIL

    first_type = {
        "parshin-first": (3, symbols.check_parshin_first),
        "four-first": (4, symbols.check_four_first),
    }
    second_type = {
        "parshin-second": (3, symbols.check_parshin_second),
        "four-second": (4, symbols.check_four_second),
    }
    either_type = {
        "sign": (ktheory.check_sign_first, ktheory.check_sign_second),
        "ksym": (ktheory.check_k_first, ktheory.check_k_second),
    }
    scene_params = {param.curve.poly: param for param in scene.params.values()}
    if kind in first_type:
        arity, op = first_type[kind]
        fs = _functions(scene, args.functions, arity)
        report = op(*fs, scene.curve(args.curve), param=scene.param(args.curve))
        code = _report_output(report, out, "curve", str(scene.curve(args.curve)))
    elif kind in second_type:
        arity, op = second_type[kind]
        fs = _functions(scene, args.functions, arity)
        point = scene.point(args.point)
        _require_point2(point)
        report = op(*fs, point, params=scene_params)
        code = _report_output(report, out, "point", str(point))
    elif kind in either_type:
        first_op, second_op = either_type[kind]
        fs = _functions(scene, args.functions, 4)
        if args.curve:
            report = first_op(*fs, scene.curve(args.curve), param=scene.param(args.curve))
            code = _report_output(report, out, "curve", str(scene.curve(args.curve)))
        elif args.point:
            point = scene.point(args.point)
            _require_point2(point)
            report = second_op(*fs, point, params=scene_params)
            code = _report_output(report, out, "point", str(point))
        else:
            raise LocalSymbolError("check sign/ksym needs --curve or --point")
    else:  # pragma: no cover - argparse restricts choices
        raise LocalSymbolError(f"unknown check {kind!r}")
    out.emit()
    return code


# ---------------------------------------------------------------------------
# numeric commands


def _cmd_numeric(args) -> int:
    scene = _load_scene(args.scene)
    out = Output(args.json)
    fs = _functions(scene, args.functions, 2)
    tol = args.tol
    if args.kind == "verify-bilocal":
        report = numeric.verify_bilocal(
            fs[0], fs[1], Fraction(args.p), Fraction(args.q), float(Fraction(args.radius)), tol
        )
        out.field("check", "verify-bilocal")
        out.field("exact", f"{report.expected.real:.12g}", report.expected.real)
        out.field("numeric", f"{report.computed.real:.12g}{report.computed.imag:+.3e}j")
        out.field("distance", f"{report.distance:.6e}", report.distance)
        out.field("tol", f"{tol:g}", tol)
        passed = report.passed
    elif args.kind == "verify-limit":
        radii = [float(Fraction(r)) for r in args.radii.split(",")]
        report = numeric.verify_residue_limit(fs[0], fs[1], Fraction(args.p), radii)
        out.field("check", "verify-limit")
        out.field(
            "target", f"{report.target.real:.12g}{report.target.imag:+.3e}j",
            [report.target.real, report.target.imag],
        )
        deviations = []
        for radius, deviation in zip(report.radii, report.deviations):
            out.lines.append(f"radius {radius:g}: deviation {deviation:.6e}")
            deviations.append({"radius": radius, "deviation": deviation})
        out.obj["deviations"] = deviations
        out.field("decreasing", str(report.strictly_decreasing).lower(), report.strictly_decreasing)
        passed = report.strictly_decreasing
    else:  # verify-composition: the documented two-puncture identities
        reports = documented_identity_checks(fs[0], fs[1], tol)
        out.field("check", "verify-composition")
        results = []
        passed = True
        for rep in reports:
            out.lines.append(f"{rep.label}: distance {rep.distance:.6e}")
            results.append({"identity": rep.label, "distance": rep.distance, "pass": rep.passed})
            passed = passed and rep.passed
        out.obj["identities"] = results
    out.field("result", "PASS" if passed else "FAIL", passed)
    out.obj["pass"] = passed
    out.emit()
    return PASS if passed else FAIL


def documented_identity_checks(f1, f2, tol: float):
    """Homotopy, composition, and commutator on fixed two-puncture paths
    (punctures 0 and 1, detours through the upper and lower half planes)."""
    top = numeric.segment(2, 2 + 2j).concat(
        numeric.segment(2 + 2j, -2 + 2j), numeric.segment(-2 + 2j, -2)
    )
    higher = numeric.segment(2, 2 + 3j).concat(
        numeric.segment(2 + 3j, -2 + 3j), numeric.segment(-2 + 3j, -2)
    )
    homotopy = numeric.check_homotopy_invariance(f1, f2, top, higher, tol)
    composition = numeric.check_composition(
        f1, f2, numeric.segment(2, 2 + 2j), numeric.segment(2 + 2j, -2 + 2j), tol
    )
    commutator = numeric.check_commutator(f1, f2, 0, 1, 0.2, 0.5 - 1j, tol)
    return homotopy, composition, commutator


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lsym",
        description="exact local symbols and reciprocity laws on P1 and P2",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_curve=False, needs_point=False, base_point=False):
        p.add_argument("--scene", required=True, help="scene file")
        p.add_argument("--functions", required=True, help="comma-separated names")
        p.add_argument("--curve", required=needs_curve, help="curve name")
        p.add_argument("--point", required=needs_point, help="point name")
        if base_point:
            p.add_argument("--base-point", dest="base_point", help="base point name")
        p.add_argument("--seed", type=int, default=0,
                       help="seed for randomized suites (reserved)")
        p.add_argument("--json", action="store_true", help="structured output")

    symbol = sub.add_parser("symbol", help="evaluate one local symbol")
    symbol.add_argument("kind", choices=sorted(_SYMBOL_ARITY))
    common(symbol, needs_point=True, base_point=True)
    symbol.set_defaults(handler=_cmd_symbol)

    check = sub.add_parser("check", help="run one reciprocity law")
    check.add_argument(
        "kind",
        choices=[
            "weil",
            "parshin-first",
            "parshin-second",
            "four-first",
            "four-second",
            "sign",
            "ksym",
        ],
    )
    common(check)
    check.set_defaults(handler=_cmd_check)

    num = sub.add_parser("numeric", help="numeric iterated-integral checks")
    num.add_argument(
        "kind", choices=["verify-bilocal", "verify-limit", "verify-composition"]
    )
    common(num)
    num.add_argument("--p", default="0", help="point of interest (rational)")
    num.add_argument("--q", default="1/2", help="base point (rational)")
    num.add_argument("--radius", default="1/10", help="loop radius (rational)")
    num.add_argument("--radii", default="1/10,1/20,1/100", help="shrinking radii")
    num.add_argument("--tol", type=float, default=1e-6, help="comparison tolerance")
    num.set_defaults(handler=_cmd_numeric)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except HypothesisViolation as exc:
        print(f"hypothesis violation: {exc}", file=sys.stderr)
        return HYPOTHESIS
    except InternalInconsistency:
        raise  # a proved identity failed: this is a bug, let it crash loudly
    except LocalSymbolError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
