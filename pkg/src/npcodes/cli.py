"""Command-line front end: construct, tables, simulate, provision.

Exit status is 0 whenever a report was produced, including validation
reports that say ``fail``; bad input or a failed construction exits 2.
"""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

from .catalog import Catalog, CatalogError
from .codes import CodeError, LinearCode, check_bounds, construct_bch, derive, example_code, single_parity_code
from .gf2 import Distance, NotAGeneratorMatrix
from .provisioner import (COST_HEADER, Limits, TopologyError, build_ilp, compare_costs, export_lp,
                          load_topology, one_plus_one, one_plus_one_row, provision)
from .provisioner.bhandari import DisjointPathError
from .provisioner.topology import decimal_text
from .sim import CASES, CSV_HEADER, exhaustive_validate

INPUT_ERRORS = (CodeError, CatalogError, TopologyError, DisjointPathError, NotAGeneratorMatrix,
                ValueError, OSError)


def _caps(text: str) -> Limits:
    try:
        nodes, seconds = text.split(",")
        return Limits(nodes=int(nodes) if nodes else None, seconds=float(seconds) if seconds else None)
    except ValueError:
        raise argparse.ArgumentTypeError("--caps expects NODES,SECONDS (either may be empty)") from None


def _common(defaults: bool) -> argparse.ArgumentParser:
    # flags accepted both before and after the subcommand
    p = argparse.ArgumentParser(add_help=False)
    d = (lambda v: v) if defaults else (lambda v: argparse.SUPPRESS)
    p.add_argument("--csv", action="store_true", default=d(False), help="machine-readable output")
    p.add_argument("--seed", type=int, default=d(0), help="seed for sampled validation (default 0)")
    p.add_argument("--catalog", type=Path, default=d(None), help="catalog file instead of the bundled one")
    p.add_argument("--caps", type=_caps, default=d(Limits()), metavar="NODES,SECONDS",
                   help="branch-and-bound node/time caps (default: none)")
    return p


def _code_args(p: argparse.ArgumentParser):
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--bch", nargs=2, type=int, metavar=("N", "D"), help="binary BCH code of designed distance D")
    g.add_argument("--parity", type=int, metavar="N", help="[N, N-1, 2] single-parity code")
    g.add_argument("--example", type=int, choices=(3, 4), help="bundled explicit example matrix")


def _make_code(args) -> LinearCode:
    if args.bch:
        return construct_bch(*args.bch)
    if args.parity is not None:
        return single_parity_code(args.parity)
    return example_code(args.example)


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="npcodes", parents=[_common(True)],
                                  description="Network protection codes and joint-protection provisioning.")
    sub = top.add_subparsers(dest="command", required=True)
    common = _common(False)

    p = sub.add_parser("construct", parents=[common], help="build a code and print its generator")
    _code_args(p)
    p.add_argument("--then", action="append", default=[], metavar="RULE[:POS]",
                   help="derivation rule (shorten, puncture, append, extend); repeatable")

    p = sub.add_parser("tables", parents=[common], help="print catalog entries")
    p.add_argument("--n", type=int)
    p.add_argument("--t", type=int, help="failures tolerated (d_min - 1)")
    p.add_argument("--type", dest="kind", help="construction kind, e.g. bch, hamming")

    p = sub.add_parser("simulate", parents=[common], help="validate erasure recovery")
    _code_args(p)
    p.add_argument("--t", type=int, help="failures per pattern (default d_min - 1)")
    p.add_argument("--exhaustive", action="store_true",
                   help="every failure pattern and every message (up to 2^16)")
    p.add_argument("--trials", type=int, default=100_000,
                   help="cap on failure patterns before sampling (default 100000)")

    p = sub.add_parser("provision", parents=[common], help="provision a topology")
    p.add_argument("topology", type=Path)
    p.add_argument("--mode", choices=("npc", "one-plus-one", "compare"), default="npc")
    p.add_argument("--export-lp", type=Path, metavar="PATH", help="also write the model as LP text")
    return top


def cmd_construct(args, out) -> int:
    code = _make_code(args)
    for step in args.then:
        rule, _, pos = step.partition(":")
        code = derive(code, rule, int(pos) if pos else None)
    if args.csv:
        gen = ";".join(code.generator.to_text().splitlines()) if code.generator is not None else ""
        w = csv.writer(out, lineterminator="\n")
        w.writerow(("n", "k", "d_min", "exact", "provenance", "generator"))
        w.writerow((code.n, code.k, code.d_min, int(code.distance.exact), code.provenance, gen))
        return 0
    print(code.label, file=out)
    print(f"provenance: {code.provenance}", file=out)
    print(f"d_min: {code.distance} ({code.distance.method})", file=out)
    if code.generator is not None:
        print("generator:", file=out)
        print(code.generator.to_text(), file=out)
    return 0


TABLE_COLS = ("n", "k", "d_min", "t", "m", "kind", "tables", "matrix", "hamming_ok", "note")


def cmd_tables(args, out) -> int:
    cat = Catalog.load(args.catalog)
    rows = []
    for r in cat.select(n=args.n, t=args.t, kind=args.kind):
        code = LinearCode(r.n, r.k, Distance(r.d_min, True, "table"))
        rows.append((r.n, r.k, r.d_min, r.t, r.n - r.k, r.kind, "+".join(r.tables),
                     "yes" if r.has_matrix else "no", "yes" if check_bounds(code).hamming_ok else "no", r.note))
    if args.csv:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(TABLE_COLS)
        w.writerows(rows)
        return 0
    head = ("n", "k", "d_min", "t", "m", "kind", "tables", "matrix", "hamming")
    body = [[str(x) for x in row[:9]] for row in rows]
    widths = [max([len(h)] + [len(b[i]) for b in body]) for i, h in enumerate(head)]
    print("  ".join(h.rjust(w) for h, w in zip(head, widths)), file=out)
    for b, row in zip(body, rows):
        line = "  ".join(x.rjust(w) for x, w in zip(b, widths))
        print(f"{line}  {row[9]}".rstrip(), file=out)
    print(f"({len(rows)} entries)", file=out)
    return 0


def cmd_simulate(args, out) -> int:
    code = _make_code(args)
    t = code.t if args.t is None else args.t
    if args.exhaustive:
        report = exhaustive_validate(code, t, max_patterns=10**9, max_codewords=1 << min(code.k, 16),
                                     seed=args.seed)
    else:
        report = exhaustive_validate(code, t, max_patterns=args.trials, seed=args.seed)
    if args.csv:
        print(CSV_HEADER, file=out)
        print(report.csv_row(), file=out)
        return 0
    print(report.line(), file=out)
    mode = "exhaustive" if report.exhaustive else "sampled"
    print(f"{mode}: {report.patterns_tested} patterns x {report.codewords} messages, "
          f"{report.failures} unrecoverable", file=out)
    for case in CASES:
        s = report.cases.get(case)
        if s is None:
            continue
        xr = f"{s.xor_min}" if s.xor_min == s.xor_max else f"{s.xor_min}-{s.xor_max}"
        qr = f"{s.queries_min}" if s.queries_min == s.queries_max else f"{s.queries_min}-{s.queries_max}"
        print(f"  {case:<13} patterns={s.count} xor_ops={xr} queries={qr}", file=out)
    return 0


def cmd_provision(args, out) -> int:
    t, c = load_topology(args.topology)
    name = args.topology.stem
    if args.export_lp:
        args.export_lp.write_text(export_lp(build_ilp(t, c, name)))
    if args.mode == "compare":
        rows = compare_costs(t, c, name, args.caps)
        print(COST_HEADER, file=out)
        for r in rows:
            print(r.csv(), file=out)
        if rows[1].status != "optimal":
            print(f"# npc row is the best point found before the caps ({rows[1].status})", file=out)
        return 0
    if args.mode == "one-plus-one":
        row = one_plus_one_row(t, c, name)
        if args.csv:
            print(COST_HEADER, file=out)
            print(row.csv(), file=out)
            return 0
        print(f"1+1 total={decimal_text(row.total)} working={decimal_text(row.working)} "
              f"spare={decimal_text(row.spare)}", file=out)
        for h, pair in one_plus_one(t, c).items():
            print(f"  {h}: working {'-'.join(pair.working)}  backup {'-'.join(pair.backup)}", file=out)
        return 0
    res, sol = provision(t, c, args.caps)
    if res is None:
        print(f"npc: no solution ({sol.status}, {sol.nodes} nodes)", file=out)
        return 0
    if args.csv:
        print(COST_HEADER, file=out)
        print(",".join([name, "npc", decimal_text(res.total), decimal_text(res.working),
                        decimal_text(res.spare)]), file=out)
        return 0
    print(f"npc total={decimal_text(res.total)} working={decimal_text(res.working)} "
          f"spare={decimal_text(res.spare)} status={sol.status} nodes={sol.nodes}", file=out)
    for grp in res.groups:
        print(f"  group {','.join(map(str, grp))}", file=out)
        for h in grp:
            line = f"    {h}: working {'-'.join(res.paths[h])}"
            if h in res.backups:
                line += f"  backup {'-'.join(res.backups[h])}"
            print(line, file=out)
        if grp in res.s_arcs:
            print(f"    S arcs: {' '.join(f'{u}>{v}' for u, v in res.s_arcs[grp]) or '-'}", file=out)
            print(f"    R arcs: {' '.join(f'{u}>{v}' for u, v in res.r_arcs[grp]) or '-'}", file=out)
    return 0


COMMANDS = {"construct": cmd_construct, "tables": cmd_tables, "simulate": cmd_simulate,
            "provision": cmd_provision}


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args, out)
    except INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
