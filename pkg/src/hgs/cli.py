"""Command-line surface: counting, table emission, verification suites."""

from __future__ import annotations

import argparse
import hashlib
import os
import sys

from .aut import aut_order, aut_pair_count, holomorph
from .byott import count_embeddings, hgs_count, hgs_table, hol_data
from .catalog import P3_COLUMNS
from .checks import SUITES, run_suite
from .errors import (
    BadSpec,
    DegreeCapExceeded,
    HgsError,
    NodeBudgetExceeded,
    OrderCapExceeded,
    UnknownRecord,
)
from .oracle import oracle_row
from .transgrp import load_corpus, resolve_spec, resolve_type_spec

TABLE_HEADER = ["G", "C27", "C9xC3", "H27", "C3^3", "G27", "Total"]


def _env_int(name, default):
    val = os.environ.get(name)
    return int(val) if val else default


def build_parser():
    parser = argparse.ArgumentParser(
        prog="hgs",
        description="Count Hopf Galois structures on odd prime-power degree extensions",
    )
    parser.add_argument(
        "--node-budget",
        type=int,
        default=_env_int("HGS_NODE_BUDGET", None),
        help="search node budget (env HGS_NODE_BUDGET)",
    )
    parser.add_argument(
        "--max-group-order",
        type=int,
        default=_env_int("HGS_MAX_GROUP_ORDER", 500_000),
        help="holomorph enumeration cap (env HGS_MAX_GROUP_ORDER)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_count = sub.add_parser("count", help="a(N, L/K) for one Galois pair and type")
    p_count.add_argument("--g", required=True, help="Galois pair spec (e.g. C27, 27T6, C27:C2)")
    p_count.add_argument("--n", required=True, help="type spec (e.g. C27, C9xC3, C3^3)")
    p_count.add_argument("--data", default=os.environ.get("HGS_DATA"))

    p_table = sub.add_parser("table", help="structure-count table over a corpus")
    p_table.add_argument("--data", default=os.environ.get("HGS_DATA"))
    p_table.add_argument("--rows", help="comma-separated labels (default: whole corpus)")
    p_table.add_argument("--format", choices=("csv", "md"), default="csv")
    p_table.add_argument("--out", help="output path (default stdout)")

    for name, desc in (
        ("aut", "automorphism group order of a type"),
        ("hol", "holomorph order of a type"),
    ):
        p = sub.add_parser(name, help=desc)
        p.add_argument("--group", required=True)

    p_census = sub.add_parser("census", help="element-order census of a group")
    p_census.add_argument("--group", required=True)
    p_census.add_argument("--data", default=os.environ.get("HGS_DATA"))

    p_verify = sub.add_parser("verify", help="run a verification suite")
    p_verify.add_argument("suite", choices=sorted(SUITES))

    p_oracle = sub.add_parser("oracle", help="direct degree<=9 enumeration vs the counter")
    p_oracle.add_argument("--g", required=True)
    p_oracle.add_argument("--data", default=os.environ.get("HGS_DATA"))
    return parser


def _corpus(path):
    return load_corpus(path) if path else None


def cmd_count(args):
    corpus = _corpus(args.data)
    g = resolve_spec(args.g, corpus)
    n_group = resolve_type_spec(args.n)
    e = count_embeddings(g, n_group, node_budget=args.node_budget)
    n_aut = hol_data(n_group).aut_order
    apc = aut_pair_count(g)
    a = e // n_aut
    b = e // apc if apc and e % apc == 0 else None
    print(f"a = {a}")
    print(f"e = {e}, |Aut(N)| = {n_aut}, |Aut(G,G')| = {apc}, b = {b}")
    return 0


def _format_rows(rows, fmt, corpus_digest):
    lines = []
    if fmt == "csv":
        lines.append(f"# corpus sha256 {corpus_digest}" if corpus_digest else "# built-in groups")
        lines.append(",".join(TABLE_HEADER))
        for row in rows:
            if row.error:
                lines.append(f"{row.g_name},ERROR: {row.error}")
            else:
                cells = ",".join(str(c) for c in row.as_tuple())
                lines.append(f"{row.g_name},{cells},{row.total}")
    else:
        lines.append("| " + " | ".join(TABLE_HEADER) + " |")
        lines.append("|" + "---|" * len(TABLE_HEADER))
        for row in rows:
            if row.error:
                lines.append(f"| {row.g_name} | ERROR: {row.error} |")
            else:
                cells = " | ".join(str(c) for c in row.as_tuple())
                lines.append(f"| {row.g_name} | {cells} | {row.total} |")
    return "\n".join(lines) + "\n"


def cmd_table(args):
    records = load_corpus(args.data) if args.data else load_corpus()
    digest = None
    if args.data:
        digest = hashlib.sha256(open(args.data, "rb").read()).hexdigest()[:16]
    else:
        from importlib import resources

        digest = hashlib.sha256(
            resources.files("hgs.data").joinpath("transitive_27.txt").read_bytes()
        ).hexdigest()[:16]
    wanted = None
    if args.rows:
        wanted = [lbl.strip() for lbl in args.rows.split(",")]
        known = {rec.label for rec in records}
        missing = [lbl for lbl in wanted if lbl not in known]
        if missing:
            raise UnknownRecord(f"not in corpus: {', '.join(missing)}")
        records = [rec for rec in records if rec.label in wanted]
    groups = [rec.pointed_group() for rec in records]
    names = [rec.label for rec in records]
    rows = hgs_table(
        groups,
        names=names,
        node_budget=args.node_budget,
        on_row=lambda row: print(f"{row}", file=sys.stderr),
    )
    text = _format_rows(rows, args.format, digest)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 1 if any(row.error for row in rows) else 0


def cmd_aut(args):
    n_group = resolve_type_spec(args.group)
    print(aut_order(n_group))
    return 0


def cmd_hol(args):
    n_group = resolve_type_spec(args.group)
    print(holomorph(n_group).order())
    return 0


def cmd_census(args):
    corpus = _corpus(args.data)
    g = resolve_spec(args.group, corpus)
    census = g.group.order_census()
    print(f"|G| = {g.order()}")
    for order, count in census.items():
        print(f"{order} -> {count}")
    return 0


def cmd_verify(args):
    reports = run_suite(args.suite)
    ok = True
    for rep in reports:
        ok &= rep.passed
        for line in rep.lines():
            print(line)
    return 0 if ok else 1


def cmd_oracle(args):
    corpus = _corpus(args.data)
    g = resolve_spec(args.g, corpus)
    row = oracle_row(g)
    print(f"oracle: {row}")
    from .catalog import build_cyclic, build_elementary_rank2

    p = round(g.degree**0.5)
    if p * p == g.degree:
        byott = {
            f"C{g.degree}": hgs_count(g, build_cyclic(p, 2)),
            f"C{p}^2": hgs_count(g, build_elementary_rank2(p)),
        }
        print(f"counter: {byott}")
        agree = all(row.get(k, 0) == v for k, v in byott.items())
        print("agree" if agree else "DISAGREE")
        return 0 if agree else 1
    return 0


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "count": cmd_count,
        "table": cmd_table,
        "aut": cmd_aut,
        "hol": cmd_hol,
        "census": cmd_census,
        "verify": cmd_verify,
        "oracle": cmd_oracle,
    }
    try:
        return handlers[args.command](args)
    except (OrderCapExceeded, NodeBudgetExceeded, DegreeCapExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (BadSpec, UnknownRecord, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except HgsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
