"""Command-line interface.

Every subcommand is a thin shell over the library operations.  Output goes
through a fixed envelope {tool_version, command, inputs, result, warnings};
`--format json` prints it as JSON with stable key order, `--format text`
renders a short human-readable view of the result payload.

Exit codes: 0 success, 1 computation error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .cfrac import continued_fraction, convergents
from .curves import PolarParams, generic_member_g1, generic_member_g2, parse_series, polar
from .genus1 import degeneracy_locus_g1, polar_model_g1
from .genus2 import classify_nondegenerate, degeneracy_locus_g2, polar_model_g2
from .newton import is_nondegenerate, newton_polygon
from .puiseux import InsufficientDepthError, intersection_numeric, puiseux_expand
from .verify import SampleConfig, run_verification


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _polygon_payload(poly) -> dict:
    return {
        "vertices": [list(v) for v in poly.vertices()],
        "sides": [
            {
                "from": list(s.from_pt),
                "to": list(s.to_pt),
                "lattice_points": [list(p) for p in s.lattice_points],
                "n": s.n,
                "m": s.m,
                "gcd": s.d,
            }
            for s in poly.sides
        ],
    }


def _topology_payload(report) -> dict:
    return {
        "branches": [{"a0": c.a0, "a1": c.a1, "count": c.count} for c in report.branches],
        "intersections": [list(row) for row in report.intersections],
    }


def _locus_payload(locus) -> dict:
    if all(len(g) == 1 for g in locus.groups):
        return {"generators": [g[0].render() for g in locus.groups]}
    return {
        "generators": None,
        "generator_groups": [[p.render() for p in g] for g in locus.groups],
    }


def _read_series(args):
    if getattr(args, "expr", None):
        text = args.expr
    elif getattr(args, "input", None):
        with open(args.input, "r", encoding="utf-8") as fh:
            text = fh.read()
    else:
        raise SystemExit2("one of --expr or --input is required")
    return parse_series(text)


class SystemExit2(RuntimeError):
    """Usage error surfaced after argparse has run."""


def _cmd_cf(args):
    cf = continued_fraction(args.q, args.p)
    conv = convergents(cf)
    return {
        "h": list(cf.h),
        "s": cf.s,
        "convergents": [[p, q] for (p, q) in conv.pairs],
    }, []


def _cmd_family(args):
    if args.kind == "g1":
        fam = generic_member_g1(args.p, args.q, args.bound)
        return {
            "p": fam.p,
            "q": fam.q,
            "weight_bound": fam.weight_bound,
            "coeff_vars": [v.name for v in fam.coeff_vars],
            "generic": fam.generic.render(),
        }, []
    fam = generic_member_g2(args.p, args.q, args.d, e1=args.e1, weight_bound=args.bound)
    return {
        "p": fam.p,
        "q": fam.q,
        "d": fam.d,
        "e1": fam.e1,
        "i0": fam.i0,
        "j0": fam.j0,
        "weight_bound": fam.weight_bound,
        "a_vars": [v.name for v in fam.a_vars],
        "b_vars": [v.name for v in fam.b_vars],
    }, []


def _cmd_polar(args):
    series = _read_series(args)
    if args.a is None and args.b is None:
        params = PolarParams.symbolic()
    else:
        params = PolarParams.concrete(args.a or 0, args.b or 0)
    return {"polar": polar(series, params).render()}, []


def _cmd_polygon(args):
    series = _read_series(args)
    return _polygon_payload(newton_polygon(series)), []


def _cmd_nondeg(args):
    series = _read_series(args)
    report = is_nondegenerate(series)
    return {
        "verdict": report.verdict,
        "sides": [
            {
                "from": list(v.side.from_pt),
                "to": list(v.side.to_pt),
                "squarefree": v.squarefree,
                "path": v.path,
                "associated": v.associated.render(),
            }
            for v in report.sides
        ],
    }, []


def _cmd_locus(args):
    locus = degeneracy_locus_g1(args.p, args.q) if args.kind == "g1" \
        else degeneracy_locus_g2(args.p, args.q, args.d)
    return _locus_payload(locus), []


def _cmd_topology(args):
    model = polar_model_g1(args.p, args.q) if args.kind == "g1" \
        else polar_model_g2(args.p, args.q, args.d)
    payload = _topology_payload(model.topology)
    payload["predicted_polygon"] = _polygon_payload(model.predicted_polygon())
    return payload, []


def _cmd_classify(args):
    gens = [int(x) for x in args.semigroup.split(",")]
    res = classify_nondegenerate(gens)
    return {
        "semigroup": gens,
        "nondegenerate_general_polar": res.nondegenerate,
        "genus": res.genus,
        "reason": res.reason,
    }, []


def _cmd_puiseux(args):
    series = _read_series(args)
    branches = puiseux_expand(series, depth=args.depth, min_order=args.min_order)
    payload = {"branches": [], "intersections": []}
    warnings = []
    flat = []
    for br, mult in branches:
        flat.append(br)
        payload["branches"].append({
            "ramification": br.n,
            "multiplicity": mult,
            "terms": [[str(e), c.real, c.imag] for (e, c) in br.terms],
            "char_exponents": list(br.char_exponents),
            "genus": br.genus,
            "semigroup": list(br.semigroup) if br.semigroup else None,
        })
    for i in range(len(flat)):
        for j in range(i + 1, len(flat)):
            try:
                value = intersection_numeric(flat[i], flat[j], tol=args.tol)
            except InsufficientDepthError:
                value = None
                warnings.append(
                    f"intersection of branches {i} and {j} needs more terms; rerun with --min-order"
                )
            payload["intersections"].append({"pair": [i, j], "value": value})
    return payload, warnings


def _cmd_verify(args):
    family = (args.p, args.q) if args.kind == "g1" else (args.p, args.q, args.d)
    cfg = SampleConfig(family=family, seed=args.seed, trials=args.trials,
                       coeff_range=args.range, puiseux_crosscheck=args.puiseux_crosscheck)
    return run_verification(cfg), []


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="polarnewton",
                                  description="Newton polygons and topology of general polar curves")
    top.add_argument("--format", choices=("text", "json"), default="text")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cf", help="continued fraction of q/p with convergents")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.set_defaults(func=_cmd_cf)

    p = sub.add_parser("family", help="generic family member data")
    fsub = p.add_subparsers(dest="kind", required=True)
    g1 = fsub.add_parser("g1")
    g1.add_argument("--p", type=int, required=True)
    g1.add_argument("--q", type=int, required=True)
    g1.add_argument("--bound", type=int, default=None)
    g1.set_defaults(func=_cmd_family, kind="g1")
    g2 = fsub.add_parser("g2")
    g2.add_argument("--p", type=int, required=True)
    g2.add_argument("--q", type=int, required=True)
    g2.add_argument("--d", type=int, required=True)
    g2.add_argument("--e1", type=int, default=2)
    g2.add_argument("--bound", type=int, default=None)
    g2.set_defaults(func=_cmd_family, kind="g2")

    def add_series_input(cmd):
        cmd.add_argument("--input", help="file with a curve expression")
        cmd.add_argument("--expr", help="curve expression")

    p = sub.add_parser("polar", help="polar series a*fx + b*fy")
    add_series_input(p)
    p.add_argument("--a", type=_fraction, default=None)
    p.add_argument("--b", type=_fraction, default=None)
    p.set_defaults(func=_cmd_polar)

    p = sub.add_parser("polygon", help="Newton polygon of a series")
    add_series_input(p)
    p.set_defaults(func=_cmd_polygon)

    p = sub.add_parser("nondeg", help="per-side squarefree verdicts")
    add_series_input(p)
    p.set_defaults(func=_cmd_nondeg)

    p = sub.add_parser("locus", help="normalized degeneracy locus generators")
    lsub = p.add_subparsers(dest="kind", required=True)
    g1 = lsub.add_parser("g1")
    g1.add_argument("--p", type=int, required=True)
    g1.add_argument("--q", type=int, required=True)
    g1.set_defaults(func=_cmd_locus, kind="g1")
    g2 = lsub.add_parser("g2")
    g2.add_argument("--p", type=int, required=True)
    g2.add_argument("--q", type=int, required=True)
    g2.add_argument("--d", type=int, required=True)
    g2.set_defaults(func=_cmd_locus, kind="g2")

    p = sub.add_parser("topology", help="predicted branch classes and intersections")
    tsub = p.add_subparsers(dest="kind", required=True)
    g1 = tsub.add_parser("g1")
    g1.add_argument("--p", type=int, required=True)
    g1.add_argument("--q", type=int, required=True)
    g1.set_defaults(func=_cmd_topology, kind="g1")
    g2 = tsub.add_parser("g2")
    g2.add_argument("--p", type=int, required=True)
    g2.add_argument("--q", type=int, required=True)
    g2.add_argument("--d", type=int, required=True)
    g2.set_defaults(func=_cmd_topology, kind="g2")

    p = sub.add_parser("classify", help="does the class have nondegenerate general polars?")
    p.add_argument("--semigroup", required=True, help="comma-separated minimal generators")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("puiseux", help="numeric branch expansions with invariants")
    add_series_input(p)
    p.add_argument("--depth", type=int, default=0)
    p.add_argument("--min-order", type=int, default=None, dest="min_order")
    p.add_argument("--tol", type=float, default=1e-8)
    p.set_defaults(func=_cmd_puiseux)

    p = sub.add_parser("verify", help="sampled verification of the predictions")
    vsub = p.add_subparsers(dest="kind", required=True)
    g1 = vsub.add_parser("g1")
    g1.add_argument("--p", type=int, required=True)
    g1.add_argument("--q", type=int, required=True)
    g1.set_defaults(func=_cmd_verify, kind="g1")
    g2 = vsub.add_parser("g2")
    g2.add_argument("--p", type=int, required=True)
    g2.add_argument("--q", type=int, required=True)
    g2.add_argument("--d", type=int, required=True)
    g2.set_defaults(func=_cmd_verify, kind="g2")
    for g in (g1, g2):
        g.add_argument("--trials", type=int, default=10)
        g.add_argument("--seed", type=int, default=42)
        g.add_argument("--range", type=int, default=10)
        g.add_argument("--puiseux-crosscheck", action="store_true")

    return top


def _render_text(payload, indent=0):
    pad = "  " * indent
    lines = []
    if isinstance(payload, dict):
        for key, value in payload.items():
            if isinstance(value, (dict, list)) and value and not _is_flat(value):
                lines.append(f"{pad}{key}:")
                lines.extend(_render_text(value, indent + 1))
            else:
                lines.append(f"{pad}{key}: {_flat_repr(value)}")
    elif isinstance(payload, list):
        for value in payload:
            if isinstance(value, (dict, list)) and value and not _is_flat(value):
                lines.append(f"{pad}-")
                lines.extend(_render_text(value, indent + 1))
            else:
                lines.append(f"{pad}- {_flat_repr(value)}")
    else:
        lines.append(f"{pad}{_flat_repr(payload)}")
    return lines


def _is_flat(value):
    if isinstance(value, list):
        return all(not isinstance(v, (dict, list)) for v in value)
    return False


def _flat_repr(value):
    if isinstance(value, list):
        return "[" + ", ".join(str(v) for v in value) + "]"
    return str(value)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    inputs = {k: v for k, v in vars(args).items()
              if k not in ("func", "format") and v is not None and not callable(v)}
    try:
        result, warnings = args.func(args)
    except (SystemExit2,) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except BrokenPipeError:
        raise
    except Exception as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    envelope = {
        "tool_version": __version__,
        "command": args.command,
        "inputs": inputs,
        "result": result,
        "warnings": warnings,
    }
    if args.format == "json":
        print(json.dumps(envelope, indent=2, sort_keys=False, default=str))
    else:
        print("\n".join(_render_text(result)))
        for w in warnings:
            print(f"warning: {w}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
