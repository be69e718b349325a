"""Command-line interface.

Subcommands mirror the library: lattice, contract, pullback, chi, hw, witt,
upsilon, cone and scenario.  Input is JSON (files or inline); human-readable
output always prints exact fractions, never decimals.  Exit codes: 0 on
success, 1 when a computation check fails, 2 on malformed input.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from .exact import format_rational, int_vector, rat
from .fano import FanoData, cone_invariants, scenario_t237
from .groupscheme import GroupSchemeData, upsilon
from .intersection import (
    Divisor,
    ResolutionConfig,
    SurfaceModel,
    chi_polynomial,
    contract,
    mumford_pullback,
    strict_self_from_rational,
)
from .lattice import (
    definiteness,
    discriminant_group,
    gram_from_dual_graph,
    named_graph,
    root_lattice,
)
from .semilinear import PLinearMap, has_max_rank, hw_det_class, hw_rank, parse_field_spec
from .witt import WittRing

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2


def _load_json(path: str):
    with open(path, "r", encoding="utf-8") as handle:
        return json.load(handle)


def _emit(payload: dict, as_json: bool, text: str) -> None:
    if as_json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text, end="" if text.endswith("\n") else "\n")


def _expand_curve_list(spec: str) -> list[str]:
    """Expand a comma list with ranges, e.g. ``"C1..C8,C9"``."""
    out: list[str] = []
    for token in spec.split(","):
        token = token.strip()
        if not token:
            continue
        m = re.fullmatch(r"([A-Za-z_]+)(\d+)\.\.(?:([A-Za-z_]+))?(\d+)", token)
        if m:
            prefix, start, prefix2, stop = m.groups()
            if prefix2 and prefix2 != prefix:
                raise ValueError(f"mismatched range prefixes in {token!r}")
            lo, hi = int(start), int(stop)
            if hi < lo:
                raise ValueError(f"empty range {token!r}")
            out.extend(f"{prefix}{i}" for i in range(lo, hi + 1))
        else:
            out.append(token)
    return out


def _cmd_lattice(args) -> int:
    if args.name:
        lat = root_lattice(args.name)
    elif args.graph:
        from .lattice import DualGraph

        lat = gram_from_dual_graph(DualGraph.from_json(_load_json(args.graph)))
    else:
        raise ValueError("lattice needs --name or --graph")
    info = definiteness(lat)
    det = lat.determinant()
    payload = {
        "lattice": lat.to_json(),
        "rank": lat.rank,
        "determinant": det,
        "even": lat.is_even,
        "definiteness": info.kind,
        "signature": list(info.signature),
    }
    if args.disc:
        form = discriminant_group(lat)
        payload["discriminant"] = {
            "group": list(form.group.cyclic_orders),
            "q_values": [format_rational(q) for q in form.q_values],
        }
        _emit(payload, args.json, str(form.group))
        return EXIT_OK
    text = (
        f"rank {lat.rank}, det {det}, {'even' if lat.is_even else 'odd'}, "
        f"{info.kind}, signature {info.signature}"
    )
    _emit(payload, args.json, text)
    return EXIT_OK


def _cmd_contract(args) -> int:
    surface = SurfaceModel.from_json(_load_json(args.surface))
    labels = _expand_curve_list(args.curves)
    result = contract(surface, [surface.curve(l) for l in labels])
    z = result.surface
    payload = {
        "surface": z.to_json(),
        "embedding": [list(r) for r in result.embedding],
        "contracted": labels,
    }
    text = (
        f"Num rank {z.num.rank}, gram {[list(r) for r in z.num.gram]}, "
        f"K {[str(c) for c in z.canonical]}, chi {z.chi}"
    )
    _emit(payload, args.json, text)
    return EXIT_OK


def _cmd_pullback(args) -> int:
    data = _load_json(args.config)
    if "strict_self" in data:
        result = mumford_pullback(ResolutionConfig.from_json(data))
        payload = {
            "coefficients": [format_rational(c) for c in result.coefficients],
            "rational_self": format_rational(result.rational_self),
            "integral": result.integral,
        }
        text = (
            "correction ("
            + ", ".join(format_rational(c) for c in result.coefficients)
            + f"), rational self-intersection {format_rational(result.rational_self)}"
        )
    elif "rational_self" in data:
        from .lattice import Lattice

        result = strict_self_from_rational(
            Lattice.from_json(data["exceptional"]),
            int_vector(data["strict_meets"]),
            rat(data["rational_self"]),
        )
        flag = "" if result.integral else " (NON-INTEGRAL)"
        payload = {
            "coefficients": [format_rational(c) for c in result.coefficients],
            "strict_self": format_rational(result.strict_self),
            "integral": result.integral,
        }
        text = f"strict transform square {format_rational(result.strict_self)}{flag}"
    else:
        raise ValueError("pullback config needs 'strict_self' or 'rational_self'")
    _emit(payload, args.json, text)
    return EXIT_OK


def _cmd_chi(args) -> int:
    surface = SurfaceModel.from_json(_load_json(args.surface))
    divisor = Divisor.from_json(_load_json(args.divisor))
    poly = chi_polynomial(surface, divisor)
    value = poly.value
    flag = "" if value.denominator == 1 else " (NON-INTEGRAL)"
    payload = {
        "coefficients": [format_rational(c) for c in (poly.a2, poly.a1, poly.a0)],
        "chi": format_rational(value),
        "integral": value.denominator == 1,
        "always_integral": poly.always_integral,
    }
    _emit(payload, args.json, f"{format_rational(value)}{flag}")
    return EXIT_OK


def _cmd_hw(args) -> int:
    field = parse_field_spec(args.field)
    matrix = _load_json(args.matrix)
    f = PLinearMap(field, tuple(tuple(field.element(x) for x in row) for row in matrix))
    det_class = hw_det_class(f)
    payload = {
        "rank": hw_rank(f),
        "max_rank": has_max_rank(f),
        "det_class": str(det_class),
    }
    text = (
        f"rank {payload['rank']}, max rank {payload['max_rank']}, "
        f"det class {payload['det_class']}"
    )
    _emit(payload, args.json, text)
    return EXIT_OK


def _cmd_witt(args) -> int:
    field = parse_field_spec(args.field)
    ring = WittRing(field, args.length)

    def parse_vec(text: str):
        return ring.vector(json.loads(text))

    a = parse_vec(args.a)
    if args.op in ("add", "mul"):
        if args.b is None:
            raise ValueError(f"witt {args.op} needs --b")
        b = parse_vec(args.b)
        result = ring.add(a, b) if args.op == "add" else ring.mul(a, b)
    elif args.op == "frobenius":
        result = ring.frobenius(a)
    elif args.op == "verschiebung":
        result = ring.verschiebung(a)
    else:
        raise ValueError(f"unknown witt operation {args.op!r}")

    def component_json(c):
        return c[0] if field.e == 1 else list(c)

    payload = {"result": [component_json(c) for c in result]}
    _emit(payload, args.json, json.dumps(payload["result"]))
    return EXIT_OK


def _cmd_upsilon(args) -> int:
    data = json.loads(args.group)
    g = GroupSchemeData.from_json(data)
    u = upsilon(g)
    _emit(u.to_json(), args.json, str(u))
    return EXIT_OK


def _cmd_cone(args) -> int:
    base = FanoData(args.dim, rat(args.degree), args.index, args.chi)
    result = cone_invariants(base, args.m)
    payload = result.fano.to_json()
    payload["canonical_class"] = result.canonical_class
    payload["degree_integral"] = result.degree_integral
    f = result.fano
    text = (
        f"dim {f.dim}, degree {format_rational(f.degree)}"
        f"{'' if result.degree_integral else ' (NON-INTEGRAL)'}, "
        f"index {f.index}, chi {f.chi}, {result.canonical_class}"
    )
    _emit(payload, args.json, text)
    return EXIT_OK


def _cmd_scenario(args) -> int:
    if args.name != "t237":
        raise ValueError(f"unknown scenario {args.name!r}")
    kind = "classical"
    if args.supersingular:
        kind = "supersingular"
    if args.ordinary:
        kind = "ordinary"
    report = scenario_t237(kind=kind, perturb=args.perturb)
    _emit(report.to_json(), args.json, report.to_text())
    return EXIT_OK if report.passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fano-lattice",
        description="Exact lattice, intersection and group-scheme computations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_json_flag(p):
        p.add_argument("--json", action="store_true", help="emit JSON instead of text")

    p = sub.add_parser("lattice", help="build and inspect a named or JSON lattice")
    p.add_argument("--name", help="built-in graph name, e.g. D5, E8, E8~, T237, E10, H")
    p.add_argument("--graph", help="path to a dual-graph JSON file")
    p.add_argument("--disc", action="store_true", help="print the discriminant group")
    add_json_flag(p)
    p.set_defaults(func=_cmd_lattice)

    p = sub.add_parser("contract", help="contract a curve configuration on a surface")
    p.add_argument("--surface", required=True, help="surface JSON file")
    p.add_argument("--curves", required=True, help="labels, ranges allowed: C1..C8,C9")
    add_json_flag(p)
    p.set_defaults(func=_cmd_contract)

    p = sub.add_parser("pullback", help="rational pullback through a resolution")
    p.add_argument("--config", required=True, help="resolution configuration JSON file")
    add_json_flag(p)
    p.set_defaults(func=_cmd_pullback)

    p = sub.add_parser("chi", help="Riemann-Roch polynomial of a divisor")
    p.add_argument("--surface", required=True)
    p.add_argument("--divisor", required=True)
    add_json_flag(p)
    p.set_defaults(func=_cmd_chi)

    p = sub.add_parser("hw", help="rank and determinant class of a p-linear map")
    p.add_argument("--field", required=True, help="field spec, e.g. p=2,e=2")
    p.add_argument("--matrix", required=True, help="matrix JSON file")
    add_json_flag(p)
    p.set_defaults(func=_cmd_hw)

    p = sub.add_parser("witt", help="truncated Witt vector arithmetic")
    p.add_argument("--field", required=True, help="field spec, e.g. p=2")
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--op", required=True, choices=["add", "mul", "frobenius", "verschiebung"])
    p.add_argument("--a", required=True, help="first operand, JSON list of components")
    p.add_argument("--b", help="second operand for add/mul")
    add_json_flag(p)
    p.set_defaults(func=_cmd_witt)

    p = sub.add_parser("upsilon", help="maximal finite unipotent quotient")
    p.add_argument("--group", required=True, help="inline group-scheme JSON")
    add_json_flag(p)
    p.set_defaults(func=_cmd_upsilon)

    p = sub.add_parser("cone", help="Fano invariants of a projective cone")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--degree", required=True)
    p.add_argument("--index", type=int, default=1)
    p.add_argument("--chi", type=int, default=1)
    p.add_argument("--m", type=int, required=True)
    add_json_flag(p)
    p.set_defaults(func=_cmd_cone)

    p = sub.add_parser("scenario", help="run a named end-to-end scenario")
    p.add_argument("name", help="scenario name (t237)")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--classical", action="store_true", help="classical branch (default)")
    group.add_argument("--supersingular", action="store_true")
    group.add_argument("--ordinary", action="store_true")
    p.add_argument("--perturb", action="store_true", help="negative control: damage one Gram entry")
    p.add_argument("--text", action="store_true", help="force text output (default)")
    add_json_flag(p)
    p.set_defaults(func=_cmd_scenario)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, KeyError, OSError, ZeroDivisionError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
