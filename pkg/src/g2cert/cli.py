"""Command-line front end: full verification, ad-hoc queries, matrix dumps.

Exit codes: 0 on success, 1 on verification failure or an ambiguous query
result, 2 on usage or expression-parse errors.
"""
from __future__ import annotations

import argparse
import json
import sys

from .bundles import cohomology_F, cohomology_M, ext_F, ext_M
from .certificate import emit
from .cohomology import FLAG
from .expr import ParseError, parse_bundle
from .mutations import gram, probe_set
from .proof import collection_after, equivalence_script, run


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="g2cert",
        description="exact verification of the exceptional-collection mutation"
                    " equivalence on the G2 flag divisor",
    )
    parser.add_argument("--config", metavar="FILE",
                        help="JSON file with default flag values")
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="replay the full script and emit a certificate")
    p_verify.add_argument("--json", action="store_true", help="emit the JSON schema document")
    p_verify.add_argument("--trace", action="store_true", help="log each step to stderr")
    p_verify.add_argument("--timestamp", type=int, default=None,
                          help="fix the emission timestamp for reproducible output")
    p_verify.add_argument("--probe-box", type=int, nargs=4, default=None,
                          metavar=("A0", "A1", "B0", "B1"),
                          help="override the probe line-bundle box (inclusive)")

    p_coh = sub.add_parser("cohomology", help="profile of a bundle expression")
    p_coh.add_argument("space", choices=["F", "M"])
    p_coh.add_argument("expr")
    p_coh.add_argument("--json", action="store_true")

    p_ext = sub.add_parser("ext", help="Ext profile between two bundle expressions")
    p_ext.add_argument("space", choices=["F", "M"])
    p_ext.add_argument("expr_a")
    p_ext.add_argument("expr_b")
    p_ext.add_argument("--json", action="store_true")

    p_gram = sub.add_parser("gram", help="Euler-pairing Gram matrix of a collection state")
    p_gram.add_argument("which", help="'initial', 'final', or a step id 0..10")
    p_gram.add_argument("--json", action="store_true")

    p_script = sub.add_parser("script", help="dump the verification script")
    p_script.add_argument("--json", action="store_true")
    return parser


def _apply_config(args: argparse.Namespace) -> None:
    if not args.config:
        return
    with open(args.config, "r", encoding="utf-8") as fh:
        defaults = json.load(fh)
    for key, value in defaults.items():
        attr = key.replace("-", "_")
        if hasattr(args, attr) and getattr(args, attr) in (None, False):
            setattr(args, attr, value)


def _profile_text(symbol: str, profile, det) -> str:
    if det.determined:
        if profile.is_empty():
            return "acyclic (Determined)"
        body = ", ".join(f"{symbol}^{d} = {n}" for d, n in profile.entries)
        return f"{body} (Determined)"
    return (f"Ambiguous: lower {det.lower.to_json()}, upper {det.upper.to_json()}"
            f" ({'; '.join(det.clashes)})")


def _profile_json(expr_text: str, space: str, bundle, profile, det) -> dict:
    doc = {
        "space": space,
        "expr": expr_text,
        "factors": [c.render() for c in bundle.factors],
        "shift": bundle.shift,
        "determined": det.determined,
        "profile": profile.to_json(),
    }
    if not det.determined:
        doc["bounds"] = {"lower": det.lower.to_json(), "upper": det.upper.to_json()}
        doc["clashes"] = list(det.clashes)
    return doc


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        _apply_config(args)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"g2cert: bad config file: {exc}", file=sys.stderr)
        return 2

    try:
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "cohomology":
            return _cmd_cohomology(args)
        if args.command == "ext":
            return _cmd_ext(args)
        if args.command == "gram":
            return _cmd_gram(args)
        if args.command == "script":
            return _cmd_script(args)
    except ParseError as exc:
        print(f"g2cert: {exc}", file=sys.stderr)
        return 2
    return 2


def _cmd_verify(args) -> int:
    probes = None
    if args.probe_box is not None:
        a0, a1, b0, b1 = args.probe_box
        probes = probe_set((a0, a1), (b0, b1))
    cert = run(equivalence_script(), flag=FLAG, probes=probes, trace=args.trace)
    fmt = "json" if args.json else "text"
    print(emit(cert, fmt, timestamp=args.timestamp))
    return 0 if cert.overall_pass else 1


def _cmd_cohomology(args) -> int:
    bundle = parse_bundle(args.expr)
    profile, det = (cohomology_F if args.space == "F" else cohomology_M)(bundle)
    if args.json:
        print(json.dumps(_profile_json(args.expr, args.space, bundle, profile, det),
                         indent=2))
    else:
        print(_profile_text("H", profile, det))
    return 0 if det.determined else 1


def _cmd_ext(args) -> int:
    a = parse_bundle(args.expr_a)
    b = parse_bundle(args.expr_b)
    profile, det = (ext_F if args.space == "F" else ext_M)(a, b)
    if args.json:
        doc = _profile_json(f"Ext({args.expr_a}, {args.expr_b})", args.space,
                            b, profile, det)
        doc["expr_a"] = args.expr_a
        doc["expr_b"] = args.expr_b
        print(json.dumps(doc, indent=2))
    else:
        print(_profile_text("Ext", profile, det))
    return 0 if det.determined else 1


def _cmd_gram(args) -> int:
    script = equivalence_script()
    last = script.steps[-1].step_id
    if args.which == "initial":
        step_id = 0
    elif args.which == "final":
        step_id = last
    else:
        try:
            step_id = int(args.which)
        except ValueError:
            print(f"g2cert: gram target must be 'initial', 'final' or 0..{last}",
                  file=sys.stderr)
            return 2
        if not 0 <= step_id <= last:
            print(f"g2cert: step id out of range 0..{last}", file=sys.stderr)
            return 2
    coll = collection_after(script, step_id)
    matrix = gram(coll)
    names = [o.name for o in coll.explicit()]
    if args.json:
        print(json.dumps({"after_step": step_id, "objects": names,
                          "matrix": [list(r) for r in matrix]}, indent=2))
    else:
        width = max(len(str(x)) for row in matrix for x in row)
        print("objects: " + ", ".join(names))
        for row in matrix:
            print("  [" + " ".join(str(x).rjust(width) for x in row) + "]")
    return 0


def _cmd_script(args) -> int:
    script = equivalence_script()
    if args.json:
        doc = {
            "initial": list(script.initial.display()),
            "expected_functor": script.expected_functor,
            "steps": [
                {
                    "id": s.step_id,
                    "kind": s.kind,
                    "moves": len(s.moves),
                    "quote": s.quote,
                    "expected_after": list(s.expected_after),
                }
                for s in script.steps
            ],
        }
        print(json.dumps(doc, indent=2))
    else:
        print("initial: " + ", ".join(script.initial.display()))
        for s in script.steps:
            print(f"step {s.step_id:>2} [{s.kind}] {s.quote}")
            print("   -> " + ", ".join(s.expected_after))
        print(f"expected functor: {script.expected_functor}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
