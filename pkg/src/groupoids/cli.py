"""Command line: every result is JSON on stdout.

Exit codes: 0 success, 1 validation or axiom failure, 2 usage error,
3 cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import classify as cl
from .errors import BadParams, CapExceeded, GroupoidError
from .groupoid import (
    Groupoid,
    RawGroupoid,
    check_raw,
    corollary_squarefree_check,
    structure,
)
from .groups import SUBGROUP_CAP
from .io import dumps, groupoid_from_json, profile_from_json, subgroupoid_from_json, subgroupoid_to_json
from .subgroupoids import (
    INDEX_CAP,
    coset,
    coset_cardinality,
    index_bruteforce,
    index_formula,
    lagrange_identity_check,
    nonempty_right_cosets,
)
from .sylow import (
    SylowProfile,
    construct_dp_subgroupoid,
    enumerate_dp_sylow,
    enumerate_DP_sylow,
    first_sylow_construct,
)


class UsageError(GroupoidError):
    exit_code = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="groupoids", description="Finite groupoids: structure, cosets, Lagrange, Sylow, classification.")
    p.add_argument("--pretty", action="store_true", help="indented JSON")
    p.add_argument("--max-order", type=int, default=None, help="largest groupoid order to process")
    p.add_argument("--max-group", type=int, default=SUBGROUP_CAP, help="largest base group order")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    for verb, text in [("check", "validate groupoid axioms"), ("info", "structure and order report")]:
        s = sub.add_parser(verb, help=text)
        s.add_argument("groupoid", help="groupoid JSON file, '-' for stdin")

    s = sub.add_parser("cosets", help="right and left cosets of a subgroupoid")
    s.add_argument("groupoid")
    s.add_argument("--sub", required=True)
    s.add_argument("--element", help="element id comp/src/dst/g; all cosets when omitted")

    for verb in ("index", "lagrange"):
        s = sub.add_parser(verb)
        s.add_argument("groupoid")
        s.add_argument("--sub", required=True)

    s = sub.add_parser("sylow", help="(d,p) or (D,P) Sylow subgroupoids, per connected component")
    s.add_argument("groupoid")
    s.add_argument("--d", type=int)
    s.add_argument("--p", type=int)
    s.add_argument("--n", type=int, help="build A_d x K with |K| = p^n instead of enumerating")
    s.add_argument("--D", type=_ints)
    s.add_argument("--P", type=_ints)
    s.add_argument("--exps", type=_ints, help="build one (D,P) subgroupoid with these exponents")
    s.add_argument("--profile", help="profile JSON file with D, P and optional exps")
    s.add_argument("--witnesses", type=int, default=1)

    for verb in ("classify", "atlas"):
        s = sub.add_parser(verb)
        s.add_argument("--order", type=int, required=True)
        s.add_argument("--table", help="group count JSON {\"m\": g(m), ...} replacing the built-in table")
        s.add_argument("--catalog", action="store_true", help="build from catalog groups instead of orders 1..6")
    return p


def _load(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}", witness=path) from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc.msg}", witness=[exc.lineno, exc.colno]) from None


def _groupoid(args, obj=None) -> Groupoid:
    g = groupoid_from_json(_load(args.groupoid) if obj is None else obj)
    for c in g.components:
        if c.m > args.max_group:
            raise CapExceeded(f"base group of order {c.m} exceeds --max-group {args.max_group}", witness=c.m)
    if args.max_order is not None and g.order > args.max_order:
        raise CapExceeded(f"groupoid order {g.order} exceeds --max-order {args.max_order}", witness=g.order)
    return g


def cmd_check(args) -> tuple[dict, int]:
    obj = _load(args.groupoid)
    if "raw" in obj:
        errs = check_raw(RawGroupoid.from_json(obj["raw"]))
        out = {"valid": not errs, "errors": [e.to_json()["error"] for e in errs]}
        return out, 0 if not errs else 1
    g = _groupoid(args, obj)
    return {"valid": True, "errors": [], "order": g.order}, 0


def _info(g: Groupoid) -> dict:
    comps = [{"identities": list(c.identities), "d": c.d, "m": c.m, "group": c.base_group.name,
              "order": c.order} for c in g.components]
    out = {"order": g.order, "k": g.k, "t": g.t, "connected": g.is_connected, "components": comps,
           "order_sum": {"lhs": g.order, "rhs": sum(c["order"] for c in comps),
                         "pass": g.order == sum(c["order"] for c in comps)}}
    out["squarefree_one_identity"] = [corollary_squarefree_check(Groupoid([c])) for c in g.components]
    return out


def cmd_info(args) -> tuple[dict, int]:
    obj = _load(args.groupoid)
    if "raw" in obj:
        g, witness = structure(RawGroupoid.from_json(obj["raw"]))
        out = _info(g)
        out["isomorphism"] = {str(k): v.id for k, v in sorted(witness.items(), key=lambda kv: str(kv[0]))}
        return out, 0
    return _info(_groupoid(args, obj)), 0


def _pair(args):
    g = _groupoid(args)
    h = subgroupoid_from_json(g, _load(args.sub))
    return g, h


def cmd_cosets(args) -> tuple[dict, int]:
    g, h = _pair(args)
    cap = args.max_order or INDEX_CAP
    if g.order > cap:
        raise CapExceeded(f"groupoid order {g.order} exceeds {cap}", witness=g.order)
    if args.element:
        x = g.element(args.element)
        right, left = coset(h, x, "right"), coset(h, x, "left")
        return {"element": x.id, "right": sorted(y.id for y in right.members),
                "left": sorted(y.id for y in left.members), "right_size": len(right),
                "formula_size": coset_cardinality(h, x), "in_left": x in left.members}, 0
    rights = sorted({tuple(sorted(y.id for y in coset(h, x, "right").members)) for x in g.element_list} - {()})
    lefts = sorted({tuple(sorted(y.id for y in coset(h, x, "left").members)) for x in g.element_list} - {()})
    return {"right": [list(c) for c in rights], "left": [list(c) for c in lefts]}, 0


def cmd_index(args) -> tuple[dict, int]:
    g, h = _pair(args)
    f = index_formula(g, h)
    b = index_bruteforce(g, h, cap=args.max_order or INDEX_CAP)
    return {"formula": f, "bruteforce": b, "agree": f == b, "nonempty_right_cosets": nonempty_right_cosets(g, h)}, \
        0 if f == b else 1


def cmd_lagrange(args) -> tuple[dict, int]:
    g, h = _pair(args)
    rep = lagrange_identity_check(g, h)
    return rep.to_json(), 0 if rep.passed else 1


def _sylow_one(g: Groupoid, args) -> dict:
    if args.d is not None:
        if args.n is not None:
            h = construct_dp_subgroupoid(g, args.d, args.p, args.n)
            return {"order": h.order, "witnesses": [subgroupoid_to_json(h)]}
        return enumerate_dp_sylow(g, args.d, args.p).to_json(args.witnesses)
    prof = profile_from_json(_load(args.profile)) if args.profile else SylowProfile(args.D, args.P, args.exps)
    if prof.exps is not None:
        h = first_sylow_construct(g, prof)
        return {"order": h.order, "profile": prof.to_json(), "witnesses": [subgroupoid_to_json(h)]}
    return enumerate_DP_sylow(g, prof.D, prof.P).to_json(args.witnesses)


def cmd_sylow(args) -> tuple[dict, int]:
    dp = args.d is not None or args.p is not None
    DP = args.D is not None or args.P is not None or args.profile is not None
    if dp == DP:
        raise UsageError("give exactly one of --d/--p or --D/--P (or --profile)")
    if dp and (args.d is None or args.p is None):
        raise UsageError("--d and --p go together")
    if DP and not args.profile and (args.D is None or args.P is None):
        raise UsageError("--D and --P go together")
    g = _groupoid(args)
    if g.is_connected:
        out = _sylow_one(g, args)
        passed = all(c["pass"] for c in out.get("checks", []))
        return out, 0 if passed else 1
    parts = []
    for i, c in enumerate(g.components):
        try:
            parts.append({"component": i, **_sylow_one(Groupoid([c]), args)})
        except GroupoidError as exc:
            if exc.exit_code != 1:
                raise
            parts.append({"component": i, **exc.to_json()})
    return {"components": parts}, 0


def _table_and_library(args):
    table = None
    if args.table:
        obj = _load(args.table)
        try:
            table = cl.GroupCountTable({int(k): int(v) for k, v in obj.items()})
        except (ValueError, AttributeError) as exc:
            raise BadParams(f"bad group count table: {exc}") from None
    library = cl.catalog_library(min(args.order, args.max_group)) if args.catalog else None
    if table is None and library is not None:
        table = cl.GroupCountTable.from_library(library)
    return table, library


def cmd_classify(args) -> tuple[dict, int]:
    if args.order < 1:
        raise UsageError("--order must be positive", witness=args.order)
    table, library = _table_and_library(args)
    count = cl.groupoid_count(args.order, table)
    out = {"order": args.order, "count": count,
           "partitions": len(cl.partitions(args.order))}
    cap = args.max_order or cl.CONSTRUCTIVE_CAP
    if args.order <= cap and (library is not None or table is None):
        reps = cl.enumerate_classes(args.order, library, cap)
        out["enumerated"] = len(reps)
        out["agree"] = len(reps) == count
    return out, 0


def cmd_atlas(args) -> tuple[dict, int]:
    if args.order < 1:
        raise UsageError("--order must be positive", witness=args.order)
    _, library = _table_and_library(args)
    return cl.atlas(args.order, library, args.max_order or cl.CONSTRUCTIVE_CAP), 0


COMMANDS = {"check": cmd_check, "info": cmd_info, "cosets": cmd_cosets, "index": cmd_index,
            "lagrange": cmd_lagrange, "sylow": cmd_sylow, "classify": cmd_classify, "atlas": cmd_atlas}


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    # --pretty is accepted anywhere on the line
    pretty = "--pretty" in argv
    argv = [a for a in argv if a != "--pretty"]
    try:
        args = build_parser().parse_args(argv)
        result, code = COMMANDS[args.verb](args)
    except GroupoidError as exc:
        result, code = exc.to_json(), exc.exit_code
    except RecursionError:
        result, code = CapExceeded("recursion limit reached").to_json(), 3
    out.write(dumps(result, pretty) + "\n")
    return code


def main() -> None:
    sys.exit(run())
