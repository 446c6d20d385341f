"""Command-line front end.

Subcommands:

* ``typecheck FILE`` — report the type of every definition;
* ``derive FILE NAME`` — print the derivative of a definition;
* ``diff FILE NAME1 NAME2`` — tabulate distance bounds between two
  closed definitions of the same type (vertical gap, self-distance
  estimate, and their combination);
* ``laws (--builtin NAME | --file QNT) --size N`` — validate a quantale
  and exhaustively check the observational-metric propositions;
* ``judge FILE.json`` — validate a serialized derivation.

Exit codes: 0 success/consistent, 1 falsified/invalid, 2 usage or I/O
errors.  With ``--format json`` and a fixed ``--seed``, output is
byte-identical across runs.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

from .eqtheory import (DerivationFormatError, check_derivation,
                       derivation_from_json)
from .prims import DEFAULT_REGISTRY, EvalDomainError
from .quantale.finite import (BUILTINS, QuantaleStructureError, builtin,
                              parse_quantale, validate)
from .quantale.props import EnumerationTooLarge, check_section3_props
from .relations import ProbeConfig, ProbeSet
from .semantics import diff_evaluate, evaluate
from .syntax import (ParseError, TypecheckError, derivative_term, parse_file,
                     partial_type, render_term, render_type, typecheck)

USAGE_ERROR = 2
DEFAULT_PROBES_ENV = "LAMDIST_PROBES"


def _load_definitions(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return parse_file(fh.read(), DEFAULT_REGISTRY)
    except OSError as e:
        raise SystemExit(f"error: cannot read {path}: {e}") from e


def _emit(payload: dict, fmt: str, text_lines):
    if fmt == "json":
        print(json.dumps(payload, sort_keys=True, separators=(",", ":")))
    else:
        for line in text_lines:
            print(line)


def cmd_typecheck(args) -> int:
    try:
        defs = _load_definitions(args.file)
    except ParseError as e:
        print(f"syntax error: {e}", file=sys.stderr)
        return 1
    rows = []
    for name, term in defs.items():
        try:
            ty = typecheck((), term, DEFAULT_REGISTRY)
        except TypecheckError as e:
            print(f"{name}: type error: {e}", file=sys.stderr)
            return 1
        rows.append((name, render_type(ty)))
    _emit({"definitions": [{"name": n, "type": t} for n, t in rows]},
          args.format, [f"{n} : {t}" for n, t in rows])
    return 0


def cmd_derive(args) -> int:
    try:
        defs = _load_definitions(args.file)
    except ParseError as e:
        print(f"syntax error: {e}", file=sys.stderr)
        return 1
    if args.name not in defs:
        print(f"error: no definition named {args.name!r}", file=sys.stderr)
        return USAGE_ERROR
    term = defs[args.name]
    try:
        ty = typecheck((), term, DEFAULT_REGISTRY)
        deriv = derivative_term((), term, DEFAULT_REGISTRY)
    except (TypecheckError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    rendered = render_term(deriv)
    _emit({"name": args.name, "derivative": rendered,
           "type": render_type(partial_type(ty))},
          args.format,
          [rendered])
    return 0


def _probe_config(args) -> ProbeConfig:
    count = args.probes
    if count is None:
        count = int(os.environ.get(DEFAULT_PROBES_ENV, "200"))
    lo, hi = args.range
    return ProbeConfig(count=count, lo=lo, hi=hi, b_max=args.b_max,
                       seed=args.seed)


def cmd_diff(args) -> int:
    try:
        defs = _load_definitions(args.file)
    except ParseError as e:
        print(f"syntax error: {e}", file=sys.stderr)
        return 1
    for name in (args.name1, args.name2):
        if name not in defs:
            print(f"error: no definition named {name!r}", file=sys.stderr)
            return USAGE_ERROR
    t1, t2 = defs[args.name1], defs[args.name2]
    try:
        ty1 = typecheck((), t1, DEFAULT_REGISTRY)
        ty2 = typecheck((), t2, DEFAULT_REGISTRY)
    except TypecheckError as e:
        print(f"type error: {e}", file=sys.stderr)
        return 1
    if ty1 != ty2:
        print(f"type error: {args.name1} : {render_type(ty1)} but "
              f"{args.name2} : {render_type(ty2)}", file=sys.stderr)
        return 1
    from .syntax.terms import FnType, RealType
    if not (isinstance(ty1, FnType) and isinstance(ty1.arg, RealType)
            and isinstance(ty1.res, RealType)):
        print("error: diff tabulates first-order functions "
              f"(got {render_type(ty1)})", file=sys.stderr)
        return USAGE_ERROR

    cfg = _probe_config(args)
    probes = ProbeSet(cfg, DEFAULT_REGISTRY)
    f1 = evaluate(t1, registry=DEFAULT_REGISTRY)
    f2 = evaluate(t2, registry=DEFAULT_REGISTRY)
    d1 = diff_evaluate(t1, registry=DEFAULT_REGISTRY)
    d2 = diff_evaluate(t2, registry=DEFAULT_REGISTRY)

    def self_bound(x, b):
        return max(d1(x, b), d2(x, b))

    rows = []
    try:
        for probe in probes.triples(ty1.arg):
            x, b = probe.left, probe.diff
            vertical = abs(f1(x) - f2(x))
            bound = vertical + self_bound(x, b)
            rows.append({"x": x, "b": b, "vertical": vertical,
                         "bound": bound})
    except EvalDomainError as e:
        print(f"evaluation error: {e}", file=sys.stderr)
        return 1
    payload = {"left": args.name1, "right": args.name2, "seed": cfg.seed,
               "rows": rows}
    # text output rounds to the reporting tolerance; JSON stays exact
    digits = max(1, min(17, -math.floor(math.log10(args.eps))))
    _emit(payload, args.format,
          [f"{args.name1} vs {args.name2} (seed {cfg.seed})",
           f"{'x':>14} {'b':>10} {'vertical':>14} {'bound':>14}"]
          + [f"{r['x']:>14.{digits}g} {r['b']:>10.4g} "
             f"{r['vertical']:>14.{digits}g} {r['bound']:>14.{digits}g}"
             for r in rows])
    return 0


def cmd_laws(args) -> int:
    try:
        if args.file:
            with open(args.file, "r", encoding="utf-8") as fh:
                q = parse_quantale(fh.read())
        else:
            q = builtin(args.builtin)
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE_ERROR
    except QuantaleStructureError as e:
        print(f"structural error: {e}", file=sys.stderr)
        return 1
    violations = validate(q)
    if violations:
        for v in violations[:10]:
            print(f"law violation: {v}", file=sys.stderr)
        return 1
    try:
        report = check_section3_props(q, args.size)
    except EnumerationTooLarge as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE_ERROR
    lines = [report.summary()]
    lines += [f"  {f}" for f in report.failures[:10]]
    _emit({"quantale": q.name, "size": args.size,
           "relations": report.relations_checked,
           "dominance_pairs": report.prop3_pairs_checked,
           "passed": report.passed,
           "failures": [str(f) for f in report.failures]},
          args.format, lines)
    return 0 if report.passed else 1


def cmd_judge(args) -> int:
    try:
        with open(args.file, "r", encoding="utf-8") as fh:
            derivation = derivation_from_json(fh.read(), DEFAULT_REGISTRY)
    except OSError as e:
        print(f"error: cannot read {args.file}: {e}", file=sys.stderr)
        return USAGE_ERROR
    except DerivationFormatError as e:
        print(f"schema error: {e}", file=sys.stderr)
        return USAGE_ERROR
    result = check_derivation(derivation, DEFAULT_REGISTRY)
    if result:
        _emit({"valid": True,
               "conclusion": derivation.conclusion.render()},
              args.format, ["valid: " + derivation.conclusion.render()])
        return 0
    path = "/".join(map(str, result.path)) or "root"
    _emit({"valid": False, "node": path, "message": result.message},
          args.format, [f"invalid at node {path}: {result.message}"])
    return 1


def _range(text: str) -> tuple[float, float]:
    lo, _, hi = text.partition(":")
    return (float(lo), float(hi))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lamdist",
        description="Distances between higher-order programs.")
    parser.add_argument("--format", choices=("text", "json"), default="text")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("typecheck", help="type every definition in a file")
    p.add_argument("file")
    p.set_defaults(fn=cmd_typecheck)

    p = sub.add_parser("derive", help="print the derivative of a definition")
    p.add_argument("file")
    p.add_argument("name")
    p.set_defaults(fn=cmd_derive)

    p = sub.add_parser("diff", help="tabulate distance bounds between two "
                                    "definitions")
    p.add_argument("file")
    p.add_argument("name1")
    p.add_argument("name2")
    p.add_argument("--probes", type=int, default=None,
                   help=f"probe count (default ${DEFAULT_PROBES_ENV} or 200)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--range", type=_range, default=(-10.0, 10.0),
                   metavar="LO:HI")
    p.add_argument("--b-max", type=float, default=1.0)
    p.add_argument("--eps", type=float, default=1e-9,
                   help="reporting tolerance for text output")
    p.set_defaults(fn=cmd_diff)

    p = sub.add_parser("laws", help="check quantale laws and the "
                                    "observational-metric propositions")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--builtin", choices=sorted(BUILTINS))
    group.add_argument("--file")
    p.add_argument("--size", type=int, default=2)
    p.set_defaults(fn=cmd_laws)

    p = sub.add_parser("judge", help="validate a serialized derivation")
    p.add_argument("file")
    p.set_defaults(fn=cmd_judge)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return USAGE_ERROR if e.code not in (0, None) else 0
    try:
        return args.fn(args)
    except SystemExit as e:
        print(e, file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
