"""Command-line front end: ``nearlyz {compute,enumerate,scan,verify,tables,line-graph}``.

Exit codes: 0 success, 1 verification failure, 2 parse error,
3 usage or applicability error, 4 oracle cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from itertools import islice
from typing import Callable, Iterable, TextIO

from . import checks, extremal, invariants
from .graph import (
    Graph,
    Graph6Error,
    GraphError,
    canonical_tree_code,
    is_connected,
    is_forest,
    is_tree,
    line_graph,
    parse_edgelist,
    parse_graph6,
    path_graph,
    star_graph,
    to_graph6,
)
from .trees import (
    MAX_ENUM_ORDER,
    broom,
    count_free_trees,
    free_tree_level_sequences,
    level_sequence_to_graph,
)

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class ParseError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _int_range(text: str) -> tuple[int, int]:
    try:
        a, b = text.split("..")
        return int(a), int(b)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A..B, got {text!r}") from None


# --- input -------------------------------------------------------------------------------


def read_graphs(source: str, fmt: str) -> list[Graph]:
    if source == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(source) as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {source}: {exc.strerror}") from None
    try:
        if fmt == "graph6":
            return [parse_graph6(line) for line in text.splitlines() if line.strip()]
        blocks = [b for b in text.split("\n\n") if b.strip()]
        return [parse_edgelist(b) for b in blocks]
    except (Graph6Error, GraphError) as exc:
        raise ParseError(str(exc)) from None


# --- compute -------------------------------------------------------------------------------

_FAMILIES: dict[str, Callable[[int], Graph]] = {
    "path": path_graph,
    "star": star_graph,
    "broom3": lambda n: broom(n, 3),
}


def _is_family(g: Graph, family: str) -> bool:
    if family == "cycle":
        return g.n >= 3 and g.m == g.n and all(d == 2 for d in g.degrees()) and is_connected(g)
    if family == "path" and g.n == 0:
        return True
    if family in _FAMILIES and is_tree(g):
        try:
            target = _FAMILIES[family](g.n)
        except (GraphError, ValueError):
            return False
        return canonical_tree_code(g) == canonical_tree_code(target)
    return False


def _closed(invariant: str, family: str, n: int) -> int:
    table = {
        ("z0", "path"): invariants.z0_path_closed,
        ("z1", "path"): invariants.z1_path_closed,
        ("sigma1", "path"): invariants.sigma1_path_closed,
        ("z1", "cycle"): invariants.z1_cycle_closed,
        ("sigma1", "cycle"): invariants.sigma1_cycle_closed,
        ("z1", "star"): invariants.z1_star_closed,
        ("z1", "broom3"): invariants.z1_broom3_closed,
    }
    fn = table.get((invariant, family))
    if fn is None:
        raise UsageError(f"no closed form for {invariant} on {family}")
    return fn(n)


def compute_value(g: Graph, invariant: str, method: str | None, k: int, family: str | None,
                  cap: int | None) -> int:
    if invariant == "zk":
        if method not in (None, "oracle"):
            raise UsageError("zk is only available through the oracle")
        return invariants.zk_oracle(g, k, cap)
    if method == "closed":
        if family is None:
            raise UsageError("--method closed needs --family")
        if not _is_family(g, family):
            raise UsageError(f"input graph is not a {family}")
        return _closed(invariant, family, g.n)
    if invariant == "sigma1":
        if method not in (None, "oracle"):
            raise UsageError("sigma1 supports the oracle and closed methods")
        return invariants.sigma1_oracle(g, cap)
    kk = 0 if invariant == "z0" else 1
    if method == "oracle":
        return invariants.zk_oracle(g, kk, cap)
    if method == "dp":
        if not is_forest(g):
            raise UsageError("--method dp requires a forest")
        return invariants.z0_tree_dp(g) if kk == 0 else invariants.z1_tree_dp(g)
    if method == "recursive":
        return invariants.z0(g) if kk == 0 else invariants.z1_recursive(g)
    return invariants.z0(g) if kk == 0 else invariants.z1(g)


def cmd_compute(args, out: TextIO) -> int:
    graphs = read_graphs(args.input, args.format)
    values = [
        compute_value(g, args.invariant, args.method, args.k, args.family, args.oracle_cap)
        for g in graphs
    ]
    if args.json:
        payload = {
            "schema": extremal.SCHEMA_VERSION,
            "invariant": args.invariant,
            "k": args.k if args.invariant == "zk" else None,
            "method": args.method,
            "results": [{"graph6": to_graph6(g) if g.n <= 62 else None, "value": v}
                        for g, v in zip(graphs, values)],
        }
        out.write(json.dumps(payload) + "\n")
    else:
        for v in values:
            out.write(f"{v}\n")
    return EXIT_OK


# --- enumerate / line-graph ------------------------------------------------------------------


def cmd_enumerate(args, out: TextIO) -> int:
    if not 1 <= args.n <= MAX_ENUM_ORDER:
        raise UsageError(f"--n must be in 1..{MAX_ENUM_ORDER}")
    total = count_free_trees(args.n)
    start, stop = 0, total
    if args.range:
        start, stop = args.range
        if not 0 <= start <= stop <= total:
            raise UsageError(f"range {start}..{stop} outside 0..{total}")
    sink = open(args.out, "w") if args.out else out
    try:
        for levels in islice(free_tree_level_sequences(args.n), start, stop):
            sink.write(to_graph6(level_sequence_to_graph(levels)) + "\n")
    finally:
        if args.out:
            sink.close()
    return EXIT_OK


def cmd_line_graph(args, out: TextIO) -> int:
    for g in read_graphs(args.input, args.format):
        h = line_graph(g)
        if h.n > 62:
            raise UsageError("line graph too large for graph6 output")
        out.write(to_graph6(h) + "\n")
    return EXIT_OK


# --- scan --------------------------------------------------------------------------------------


def cmd_scan(args, out: TextIO) -> int:
    if not extremal.SCAN_MIN_ORDER <= args.n <= args.max_order:
        raise UsageError(f"--n must be in {extremal.SCAN_MIN_ORDER}..{args.max_order}")
    report = extremal.scan_order(args.n, jobs=args.jobs, max_order=args.max_order)
    if args.json:
        out.write(json.dumps(report.to_dict(timing=args.timing), indent=2) + "\n")
    else:
        out.write(report.to_text() + "\n")
    return EXIT_OK


# --- verify ------------------------------------------------------------------------------------

SUITES = ("tables", "min", "max", "second-max", "lemmas", "monotonicity", "identities", "all")


def run_suite(name: str, n_range: tuple[int, int] | None, seed: int, jobs: int,
              trials: int) -> list[extremal.VerificationResult]:
    results: list[extremal.VerificationResult] = []
    theorem_range = n_range or (9, 13)
    second_range = n_range or (9, 16)
    reports: dict[int, extremal.ExtremalReport] = {}

    def scans(lo, hi):
        for n in range(lo, hi + 1):
            if n not in reports:
                reports[n] = extremal.scan_order(n, jobs)
        return reports

    if name in ("tables", "all"):
        results += [extremal.verify_table(9), extremal.verify_table(10)]
    if name in ("min", "all"):
        results.append(extremal.verify_min_theorems(*theorem_range, reports=scans(*theorem_range)))
    if name in ("max", "all"):
        results.append(extremal.verify_max_theorem(*theorem_range, seed=seed,
                                                   reports=scans(*theorem_range)))
    if name in ("second-max", "all"):
        results.append(extremal.check_second_max(*second_range, reports=scans(*second_range)))
    if name in ("lemmas", "all"):
        cfg = checks.LemmaConfig(seed=seed)
        if n_range:
            cfg.ironing_n_max = cfg.merge_n_max = n_range[1]
        results += list(checks.verify_lemma_inequalities(cfg).values())
    if name in ("monotonicity", "all"):
        results.append(checks.monotonicity_suite(seed, trials))
    if name in ("identities", "all"):
        results += list(checks.identity_suite(seed).values())
        results.append(checks.closed_form_suite())
    return results


def cmd_verify(args, out: TextIO) -> int:
    results = run_suite(args.suite, args.n_range, args.seed, args.jobs, args.trials)
    if args.json:
        payload = {"schema": extremal.SCHEMA_VERSION, "suite": args.suite, "seed": args.seed,
                   "results": [r.to_dict() for r in results]}
        out.write(json.dumps(payload, indent=2) + "\n")
    else:
        for r in results:
            out.write(r.summary_line() + "\n")
            for note in r.notes:
                out.write(f"      {note}\n")
            for c in r.counterexamples:
                out.write(f"      counterexample: {json.dumps(c)}\n")
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


# --- tables ------------------------------------------------------------------------------------


def cmd_tables(args, out: TextIO) -> int:
    orders = [args.n] if args.n else [9, 10]
    results = []
    for n in orders:
        rows = extremal.load_golden_table(n)
        result = extremal.verify_table(n, rows)
        results.append(result)
        if args.json:
            continue
        out.write(f"# n={n}: {len(rows)} trees, status {result.status}\n")
        out.write("index,value,degrees,graph6\n")
        for r in rows:
            degrees = " ".join(map(str, r.degrees)) if r.degrees else ""
            out.write(f"{r.index},{r.value},{degrees},{r.graph6 or ''}\n")
    if args.json:
        payload = {"schema": extremal.SCHEMA_VERSION,
                   "tables": [
                       {"n": n, "values": [r.value for r in extremal.load_golden_table(n)],
                        "verification": res.to_dict()}
                       for n, res in zip(orders, results)]}
        out.write(json.dumps(payload, indent=2) + "\n")
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


# --- parser ------------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="nearlyz", description=__doc__.splitlines()[0])
    parser.add_argument("--oracle-cap", type=int, default=None,
                        help=f"brute-force size cap (env {invariants.ORACLE_CAP_ENV}, default "
                             f"{invariants.DEFAULT_ORACLE_CAP})")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("compute", help="evaluate an invariant for each input graph")
    p.add_argument("--invariant", choices=("z0", "z1", "zk", "sigma1"), required=True)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--input", default="-")
    p.add_argument("--format", choices=("graph6", "edgelist"), default="graph6")
    p.add_argument("--method", choices=("oracle", "recursive", "dp", "closed"))
    p.add_argument("--family", choices=("path", "cycle", "star", "broom3"))
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("enumerate", help="all free trees of order N as graph6")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--range", type=_int_range)
    p.add_argument("--out")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("scan", help="extremal Z_1 trees of order N")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--max-order", type=int, default=extremal.SCAN_MAX_ORDER)
    p.add_argument("--json", action="store_true")
    p.add_argument("--timing", action="store_true", help="include elapsed seconds in JSON")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", choices=SUITES, required=True)
    p.add_argument("--n-range", type=_int_range)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--trials", type=int, default=500)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("tables", help="print and check the golden Z_1 tables")
    p.add_argument("--n", type=int, choices=(9, 10))
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("line-graph", help="line graph of each input graph as graph6")
    p.add_argument("--input", default="-")
    p.add_argument("--format", choices=("graph6", "edgelist"), default="graph6")
    p.set_defaults(func=cmd_line_graph)
    return parser


def main(argv: Iterable[str] | None = None, out: TextIO | None = None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except ParseError as exc:
        print(f"nearlyz: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except invariants.OracleCapExceeded as exc:
        print(f"nearlyz: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (UsageError, ValueError, GraphError) as exc:
        print(f"nearlyz: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
