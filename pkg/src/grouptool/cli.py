"""The ``grouptool`` command line."""

from __future__ import annotations

import argparse
import json
import sys
from collections.abc import Sequence
from typing import TextIO

import sympy

from . import __version__
from .catalog import build, load_cayley_csv, parse_cycle_notation, standard_corpus
from .dsub import CoprimePair, DResult, d_m_group, d_mn_group, l_result
from .errors import GroupToolError, InternalInconsistency
from .eseries import UNCLASSIFIED, ESeriesResult, compute_e_series
from .group import Group, enumerate_from_generators
from .structure import find_frobenius, find_two_frobenius
from .subgroups import p_part
from .verify import Caps, get_suite, overall_ok, run_all, run_suite


class UsageError(Exception):
    pass


def _add_common(p: argparse.ArgumentParser, *, group_required: bool) -> None:
    src = p.add_mutually_exclusive_group(required=group_required)
    src.add_argument("--group", metavar="NAME", help="catalog name, e.g. S4, F20, S3xS3")
    src.add_argument("--gens", metavar="CYCLES", help='permutation generators, e.g. "(1 2 3), (1 2)"')
    src.add_argument("--cayley", metavar="PATH", help="header-less CSV Cayley table")
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--pi", metavar="P1,P2", help="m is the pi-part of |G| and n = |G|/m")
    p.add_argument("--max-order", type=int, default=200)
    p.add_argument("--subgroup-cap", type=int, default=48)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", metavar="PATH")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="grouptool", description=__doc__)
    parser.add_argument("--version", action="version", version=f"grouptool {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_ in (
        ("dsub", "L_m(G), D_m(G) and D_{m,n}(G)"),
        ("eseries", "the E-series for (m, n)"),
        ("classify", "the length-based classification"),
    ):
        _add_common(sub.add_parser(name, help=help_), group_required=True)
    v = sub.add_parser("verify", help="run theorem suites over the catalog")
    _add_common(v, group_required=False)
    v.add_argument("--suite", default="all", metavar="ID|all")
    c = sub.add_parser("catalog", help="list catalog groups or describe one")
    _add_common(c, group_required=False)
    c.add_argument("--list", action="store_true")
    return parser


def load_group(args: argparse.Namespace) -> Group:
    if args.group:
        return build(args.group)
    if args.gens:
        return enumerate_from_generators(
            parse_cycle_notation(args.gens), name=args.gens.strip(), source=f"generators {args.gens.strip()}"
        )
    try:
        return load_cayley_csv(args.cayley)
    except OSError as exc:
        raise UsageError(f"--cayley: {exc}") from None


def resolve_params(args: argparse.Namespace, order: int) -> CoprimePair:
    explicit = args.m is not None or args.n is not None
    if explicit and args.pi is not None:
        raise UsageError("--pi cannot be combined with --m/--n")
    if explicit:
        if args.m is None or args.n is None:
            raise UsageError("--m and --n must be given together")
        return CoprimePair(args.m, args.n)
    if args.pi is None:
        raise UsageError("parameters required: --m INT --n INT or --pi P1,P2")
    try:
        primes = [int(tok) for tok in args.pi.split(",") if tok.strip()]
    except ValueError:
        raise UsageError(f"--pi: not a list of integers: {args.pi!r}") from None
    if not primes or not all(sympy.isprime(p) for p in primes):
        raise UsageError(f"--pi: {args.pi!r} is not a set of primes")
    m = 1
    for p in set(primes):
        m *= p_part(order, p)
    return CoprimePair(m, order // m)


def _members(G: Group, members: Sequence[int]) -> dict:
    return {"order": len(members), "members": list(members), "labels": [G.labels[x] for x in members]}


def _dresult(G: Group, r: DResult) -> dict:
    d = _members(G, r.members)
    d["is_subgroup"] = r.is_subgroup
    d["is_nilpotent"] = r.is_nilpotent
    return d


def cmd_dsub(G: Group, pair: CoprimePair) -> tuple[dict, int]:
    res = {
        "L_m": _dresult(G, l_result(G, pair.m)),
        "D_m": _dresult(G, d_m_group(G, pair.m)),
        "D_mn": _dresult(G, d_mn_group(G, pair)),
    }
    return res, 0


def _eseries_dict(G: Group, s: ESeriesResult) -> dict:
    return {
        "terms": [list(T.members) for T in s.terms],
        "orders": s.orders,
        "branches": list(s.branches),
        "reached": s.reached,
        "length": s.length,
        "stabilized_at": s.stabilized_at,
        "classification": s.classification,
    }


def cmd_eseries(G: Group, pair: CoprimePair) -> tuple[dict, int]:
    s = compute_e_series(G, pair)
    return _eseries_dict(G, s), int(s.classification == UNCLASSIFIED)


def cmd_classify(G: Group, pair: CoprimePair) -> tuple[dict, int]:
    s = compute_e_series(G, pair)
    w = find_frobenius(G)
    w2 = find_two_frobenius(G)
    res = {
        "classification": s.classification,
        "length": s.length,
        "orders": s.orders,
        "frobenius_kernel": None if w is None else list(w.kernel.members),
        "two_frobenius": None if w2 is None else {"K": list(w2.K.members), "L": list(w2.L.members)},
    }
    return res, int(s.classification == UNCLASSIFIED)


def cmd_verify(args: argparse.Namespace) -> tuple[dict, int]:
    caps = Caps(max_order=args.max_order, subgroup_cap=args.subgroup_cap)
    corpus = standard_corpus(args.max_order)
    if args.group:
        corpus = [e for e in corpus if e.name == args.group]
        if not corpus:
            raise UsageError(f"--group: {args.group!r} is not in the catalog up to order {args.max_order}")
    if args.suite == "all":
        reports = run_all(corpus, caps)
    else:
        reports = [run_suite(get_suite(args.suite).suite_id, corpus, caps)]
    ok = overall_ok(reports)
    return {"ok": ok, "suites": [r.to_dict() for r in reports]}, 0 if ok else 1


def cmd_catalog(args: argparse.Namespace) -> tuple[dict, int]:
    if args.group and not args.list:
        G = build(args.group)
        return {"name": G.name, "source": G.source, **G.describe()}, 0
    return {
        "entries": [
            {"name": e.name, "order": e.expected_order, "recipe": e.recipe}
            for e in standard_corpus(args.max_order)
        ]
    }, 0


def render_json(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def render_text(doc: dict) -> str:
    lines = []
    g = doc.get("group")
    if g:
        lines.append(f"group {g['name']} (order {g['order']}) from {g['source']}")
    p = doc.get("params")
    if p:
        lines.append(f"params m={p['m']} n={p['n']}")
    res = doc["result"]
    cmd = doc["command"]
    if cmd == "dsub":
        m, n = p["m"], p["n"]
        for key, title in (("L_m", f"L_{m}"), ("D_m", f"D_{m}"), ("D_mn", f"D_{{{m},{n}}}")):
            r = res[key]
            flags = f"subgroup={str(r['is_subgroup']).lower()}"
            if r["is_nilpotent"] is not None:
                flags += f" nilpotent={str(r['is_nilpotent']).lower()}"
            lines.append(f"{title}: order {r['order']} {flags}")
            lines.append(f"  members {r['members']}")
            lines.append(f"  labels  {' '.join(r['labels'])}")
    elif cmd == "eseries":
        for k, (T, o) in enumerate(zip(res["terms"], res["orders"])):
            how = res["branches"][k - 1] if k else "start"
            lines.append(f"E_{k}: order {o} ({how}) members {T}")
        lines.append(f"reached={str(res['reached']).lower()} length={res['length']} "
                     f"stabilized_at={res['stabilized_at']}")
        lines.append(f"classification {res['classification']}")
    elif cmd == "classify":
        lines.append(f"classification {res['classification']} (length {res['length']}, orders {res['orders']})")
        lines.append(f"frobenius kernel {res['frobenius_kernel']}")
        lines.append(f"two-frobenius {res['two_frobenius']}")
    elif cmd == "verify":
        for s in res["suites"]:
            c = s["counts"]
            tag = " (informational)" if s["informational"] else ""
            lines.append(f"{s['suite_id']:32s} pass={c['pass']} fail={c['fail']} skip={c['skip']}{tag}")
            for o in s["outcomes"]:
                if o["status"] == "fail":
                    lines.append(f"    FAIL {o['group']} {o['params']} {json.dumps(o['witness'])}")
        lines.append("all suites passed" if res["ok"] else "some suites failed")
    elif cmd == "catalog":
        if "entries" in res:
            lines += [f"{e['name']:10s} {e['order']:5d}  {e['recipe']}" for e in res["entries"]]
        else:
            lines += [f"{k}: {v}" for k, v in res.items()]
    return "\n".join(lines) + "\n"


def emit_report(doc: dict, fmt: str, sink: TextIO) -> None:
    sink.write(render_json(doc) if fmt == "json" else render_text(doc))


def run(args: argparse.Namespace) -> tuple[dict, int]:
    if args.command in ("verify", "catalog"):
        fn = cmd_verify if args.command == "verify" else cmd_catalog
        result, code = fn(args)
        return {"command": args.command, "group": None, "params": None, "result": result, "version": __version__}, code
    G = load_group(args)
    pair = resolve_params(args, G.order)
    fn = {"dsub": cmd_dsub, "eseries": cmd_eseries, "classify": cmd_classify}[args.command]
    result, code = fn(G, pair)
    doc = {
        "command": args.command,
        "group": {"name": G.name, "order": G.order, "source": G.source},
        "params": {"m": pair.m, "n": pair.n},
        "result": result,
        "version": __version__,
    }
    return doc, code


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        doc, code = run(args)
    except InternalInconsistency as exc:
        print(f"grouptool: theorem violation: {exc}", file=sys.stderr)
        return 1
    except (UsageError, GroupToolError) as exc:
        parser.print_usage(sys.stderr)
        print(f"grouptool: error: {exc}", file=sys.stderr)
        return 2
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                emit_report(doc, args.format, fh)
        except OSError as exc:
            print(f"grouptool: cannot write {args.out}: {exc}", file=sys.stderr)
            return 1
    else:
        emit_report(doc, args.format, sys.stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
