"""Exhaustive scans over all trees of a given order and the extremal checks.

A scan walks the free-tree stream, optionally split into contiguous index
ranges handled by worker processes. Each range keeps the two smallest and the
two largest ``Z_1`` values together with every witness; merging partial
results is associative and commutative, so the report does not depend on how
the stream was split.
"""

from __future__ import annotations

import csv
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from typing import Any

from .graph import (
    CanonicalTreeCode,
    Graph,
    canonical_tree_code,
    is_tree,
    parse_graph6,
    path_graph,
    star_graph,
    to_graph6,
    tree_from_code,
)
from .invariants import (
    z1_broom3_closed,
    z1_path_closed,
    z1_star_closed,
    z1_tree_dp,
)
from .trees import broom, count_free_trees, enumerate_free_trees, spider_branches, star_like

SCHEMA_VERSION = 1
SCAN_MIN_ORDER = 4
SCAN_MAX_ORDER = 20
THEOREM_MIN_ORDER = 9


# --- result types ---------------------------------------------------------------


@dataclass
class VerificationResult:
    claim: str
    tested: str
    checked: int = 0
    counterexamples: list[dict[str, Any]] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def status(self) -> str:
        return "fail" if self.counterexamples else "pass"

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    def fail(self, g: Graph | None, **details) -> None:
        entry = {"graph6": to_graph6(g) if g is not None else None}
        entry.update(details)
        self.counterexamples.append(entry)

    def to_dict(self) -> dict[str, Any]:
        return {
            "claim": self.claim,
            "tested": self.tested,
            "status": self.status,
            "checked": self.checked,
            "counterexamples": self.counterexamples,
            "notes": self.notes,
        }

    def summary_line(self) -> str:
        return f"{self.status.upper():4}  {self.claim:<28} {self.tested:<24} checked={self.checked}"


def describe_tree(g: Graph) -> str | None:
    """Human name for the named families, ``None`` for anything else."""
    n = g.n
    degs = sorted(g.degrees(), reverse=True)
    if n >= 2 and degs[0] <= 2:
        return f"P_{n}"
    if degs[0] == n - 1:
        return f"K_1,{n - 1}"
    if n >= 4 and degs[:2] == [n - 2, 2]:
        return f"B^3_{n}"
    arms = spider_branches(g)
    if arms is not None:
        return "[" + ",".join(f"P_{a}" for a in arms) + "]"
    return None


@dataclass(frozen=True)
class Witness:
    code: CanonicalTreeCode

    @property
    def graph(self) -> Graph:
        return tree_from_code(self.code)

    def to_dict(self) -> dict[str, Any]:
        g = self.graph
        return {"code": str(self.code), "graph6": to_graph6(g), "shape": describe_tree(g)}


@dataclass
class Extreme:
    value: int
    witnesses: list[Witness]

    @property
    def unique(self) -> bool:
        return len(self.witnesses) == 1

    def to_dict(self) -> dict[str, Any]:
        return {"value": self.value, "witnesses": [w.to_dict() for w in self.witnesses]}


@dataclass
class ExtremalReport:
    n: int
    tree_count: int
    min: Extreme
    second_min: Extreme | None
    max: Extreme
    second_max: Extreme | None
    elapsed: float = 0.0

    def to_dict(self, timing: bool = False) -> dict[str, Any]:
        out: dict[str, Any] = {"schema": SCHEMA_VERSION, "n": self.n, "tree_count": self.tree_count}
        for name in ("min", "second_min", "max", "second_max"):
            ext = getattr(self, name)
            out[name] = ext.to_dict() if ext is not None else None
        if timing:
            out["elapsed"] = round(self.elapsed, 3)
        return out

    def to_text(self) -> str:
        lines = [f"n = {self.n}   trees = {self.tree_count}   elapsed = {self.elapsed:.2f}s"]
        for name in ("min", "second_min", "second_max", "max"):
            ext = getattr(self, name)
            if ext is None:
                lines.append(f"  {name:<11} -")
                continue
            for w in ext.witnesses:
                d = w.to_dict()
                lines.append(
                    f"  {name:<11} {ext.value:>12}  {d['shape'] or '-':<18} {d['graph6']}"
                )
        return "\n".join(lines)


# --- scanning --------------------------------------------------------------------

Partial = tuple[dict[int, list[tuple[int, ...]]], dict[int, list[tuple[int, ...]]], int]


def _keep(bucket: dict[int, list], value: int, smallest: bool) -> bool:
    if len(bucket) < 2 or value in bucket:
        return True
    edge = max(bucket) if smallest else min(bucket)
    return value < edge if smallest else value > edge


def _trim(bucket: dict[int, list], smallest: bool) -> None:
    while len(bucket) > 2:
        del bucket[max(bucket) if smallest else min(bucket)]


def scan_range(n: int, start: int, stop: int) -> Partial:
    """Two smallest and two largest ``Z_1`` values (with witness codes) over
    trees ``start..stop`` of the stream."""
    low: dict[int, list] = {}
    high: dict[int, list] = {}
    count = 0
    for g in enumerate_free_trees(n, start, stop):
        count += 1
        value = z1_tree_dp(g)
        want_low = _keep(low, value, True)
        want_high = _keep(high, value, False)
        if not (want_low or want_high):
            continue
        code = canonical_tree_code(g).code
        if want_low:
            low.setdefault(value, []).append(code)
            _trim(low, True)
        if want_high:
            high.setdefault(value, []).append(code)
            _trim(high, False)
    return low, high, count


def merge_partials(parts: list[Partial]) -> Partial:
    low: dict[int, list] = {}
    high: dict[int, list] = {}
    total = 0
    for p_low, p_high, count in parts:
        total += count
        for value, codes in p_low.items():
            low.setdefault(value, []).extend(codes)
        for value, codes in p_high.items():
            high.setdefault(value, []).extend(codes)
        _trim(low, True)
        _trim(high, False)
    for bucket in (low, high):
        for value in bucket:
            bucket[value] = sorted(set(bucket[value]))
    return low, high, total


def _split_ranges(total: int, parts: int) -> list[tuple[int, int]]:
    parts = max(1, min(parts, total))
    bounds = [total * i // parts for i in range(parts + 1)]
    return [(bounds[i], bounds[i + 1]) for i in range(parts)]


def _extreme(bucket: dict[int, list], rank: int, smallest: bool) -> Extreme | None:
    keys = sorted(bucket, reverse=not smallest)
    if rank >= len(keys):
        return None
    value = keys[rank]
    return Extreme(value, [Witness(CanonicalTreeCode(c)) for c in bucket[value]])


def scan_order(n: int, jobs: int = 1, max_order: int = SCAN_MAX_ORDER) -> ExtremalReport:
    """Exact minimum, second minimum, maximum and second maximum of ``Z_1`` over
    every tree of order ``n``."""
    if not SCAN_MIN_ORDER <= n <= max_order:
        raise ValueError(f"scan order must be in {SCAN_MIN_ORDER}..{max_order}, got {n}")
    started = time.perf_counter()
    total = count_free_trees(n)
    ranges = _split_ranges(total, jobs)
    if jobs <= 1:
        parts = [scan_range(n, a, b) for a, b in ranges]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(scan_range, n, a, b) for a, b in ranges]
            parts = [f.result() for f in futures]
    low, high, count = merge_partials(parts)
    if count != total:
        raise AssertionError(f"enumerated {count} trees, expected {total}")
    return ExtremalReport(
        n=n,
        tree_count=count,
        min=_extreme(low, 0, True),
        second_min=_extreme(low, 1, True),
        max=_extreme(high, 0, False),
        second_max=_extreme(high, 1, False),
        elapsed=time.perf_counter() - started,
    )


# --- golden tables ------------------------------------------------------------------


@dataclass(frozen=True)
class GoldenRow:
    index: int
    value: int
    degrees: tuple[int, ...] | None
    graph6: str | None


def load_golden_table(n: int) -> list[GoldenRow]:
    if n not in (9, 10):
        raise ValueError("golden tables exist for n = 9 and n = 10")
    text = resources.files("nearlyz").joinpath(f"tables/z1_n{n}.csv").read_text()
    rows = []
    for rec in csv.DictReader(text.splitlines()):
        rows.append(
            GoldenRow(
                index=int(rec["index"]),
                value=int(rec["value"]),
                degrees=tuple(map(int, rec["degrees"].split())) if rec.get("degrees") else None,
                graph6=rec.get("graph6") or None,
            )
        )
    return rows


def verify_table(n: int, rows: list[GoldenRow] | None = None) -> VerificationResult:
    """Compare the golden ``Z_1`` multiset with a fresh enumeration.

    Rows that carry a drawing (graph6) are also matched tree by tree.
    """
    rows = load_golden_table(n) if rows is None else rows
    result = VerificationResult(claim="golden-table", tested=f"n={n}")
    computed: dict[CanonicalTreeCode, int] = {}
    for g in enumerate_free_trees(n):
        computed[canonical_tree_code(g)] = z1_tree_dp(g)
    expected = sorted(r.value for r in rows)
    actual = sorted(computed.values())
    result.checked = len(rows)
    if len(expected) != len(actual):
        result.fail(None, reason="size", expected=len(expected), actual=len(actual))
    remaining = list(actual)
    for v in expected:
        if v in remaining:
            remaining.remove(v)
        else:
            result.fail(None, reason="golden value not produced", value=v)
    by_value: dict[int, list[str]] = {}
    for code, v in computed.items():
        by_value.setdefault(v, []).append(to_graph6(tree_from_code(code)))
    for v in remaining:
        result.fail(None, reason="computed value missing from table", value=v,
                    witnesses=by_value[v])
    seen: dict[CanonicalTreeCode, int] = {}
    keyed = 0
    for r in rows:
        if r.graph6 is None:
            continue
        keyed += 1
        g = parse_graph6(r.graph6)
        code = canonical_tree_code(g)
        if computed.get(code) != r.value:
            result.fail(g, reason="drawn tree value mismatch", index=r.index,
                        table=r.value, computed=computed.get(code))
        if code in seen:
            result.fail(g, reason="tree drawn twice", index=r.index, first=seen[code])
        seen[code] = r.index
    result.notes.append(f"{len(rows)} values matched as a multiset; {keyed} drawings matched tree by tree")
    return result


# --- theorem checks -------------------------------------------------------------------


def _code(g: Graph) -> CanonicalTreeCode:
    return canonical_tree_code(g)


def _check_n_range(n_lo: int, n_hi: int, top: int = SCAN_MAX_ORDER) -> None:
    if not THEOREM_MIN_ORDER <= n_lo <= n_hi <= top:
        raise ValueError(f"need {THEOREM_MIN_ORDER} <= n_lo <= n_hi <= {top}")


def _expect_unique(result: VerificationResult, label: str, n: int, ext: Extreme | None,
                   tree: Graph, value: int) -> None:
    if ext is None:
        result.fail(tree, reason=f"{label} missing", n=n)
        return
    codes = [w.code for w in ext.witnesses]
    if not ext.unique or codes[0] != _code(tree):
        result.fail(ext.witnesses[0].graph, reason=f"{label} witness", n=n,
                    witnesses=[w.to_dict() for w in ext.witnesses])
    if ext.value != value:
        result.fail(tree, reason=f"{label} value", n=n, expected=value, actual=ext.value)


def verify_min_theorems(n_lo: int, n_hi: int, jobs: int = 1,
                        reports: dict[int, ExtremalReport] | None = None) -> VerificationResult:
    """Unique minimum is the star, unique second minimum is ``B^3_n``."""
    _check_n_range(n_lo, n_hi)
    result = VerificationResult(claim="min/second-min", tested=f"n={n_lo}..{n_hi}")
    for n in range(n_lo, n_hi + 1):
        rep = (reports or {}).get(n) or scan_order(n, jobs)
        result.checked += rep.tree_count
        _expect_unique(result, "min", n, rep.min, star_graph(n), z1_star_closed(n))
        _expect_unique(result, "second-min", n, rep.second_min, broom(n, 3), z1_broom3_closed(n))
    return result


def random_forest(n: int, rng) -> Graph:
    """Random labelled tree (Pruefer sequence) with a random subset of edges removed."""
    edges = list(random_tree(n, rng).edges)
    keep_prob = rng.choice((0.5, 0.75, 0.9, 1.0))
    return Graph(n, frozenset(e for e in edges if rng.random() < keep_prob))


def random_tree(n: int, rng) -> Graph:
    if n <= 2:
        return path_graph(n)
    seq = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    for x in seq:
        leaf = min(v for v in range(n) if degree[v] == 1)
        edges.append((leaf, x))
        degree[leaf] -= 1
        degree[x] -= 1
    u, w = [v for v in range(n) if degree[v] == 1]
    edges.append((u, w))
    return Graph.from_edges(n, edges)


def verify_max_theorem(n_lo: int, n_hi: int, jobs: int = 1, seed: int = 0,
                       forests_per_n: int = 50,
                       reports: dict[int, ExtremalReport] | None = None) -> VerificationResult:
    """The path is the unique maximiser over trees; sampled forests never beat it."""
    _check_n_range(n_lo, n_hi)
    rng = random.Random(seed)
    result = VerificationResult(claim="max", tested=f"n={n_lo}..{n_hi}")
    for n in range(n_lo, n_hi + 1):
        rep = (reports or {}).get(n) or scan_order(n, jobs)
        result.checked += rep.tree_count
        path_value = z1_path_closed(n)
        _expect_unique(result, "max", n, rep.max, path_graph(n), path_value)
        for _ in range(forests_per_n):
            f = random_forest(n, rng)
            value = z1_tree_dp(f)
            result.checked += 1
            is_path = is_tree(f) and max(f.degrees()) <= 2
            if value > path_value or (value == path_value and not is_path):
                result.fail(f, reason="forest reaches the path value", n=n,
                            value=value, path=path_value)
    return result


def second_max_expected(n: int) -> tuple[int, ...]:
    """Tripod expected at the second maximum for ``9 <= n <= 20``."""
    if n in (9, 11):
        return (n - 3, 1, 1)
    return tuple(sorted((3, 3, n - 7), reverse=True))


def check_second_max(n_lo: int, n_hi: int, jobs: int = 1,
                     reports: dict[int, ExtremalReport] | None = None) -> VerificationResult:
    """Second maximum is a tripod, ``[P_1,P_1,P_{n-3}]`` for n in {9, 11} and
    ``[P_3,P_3,P_{n-7}]`` otherwise; ties are reported, not assumed away."""
    _check_n_range(n_lo, n_hi)
    result = VerificationResult(claim="second-max", tested=f"n={n_lo}..{n_hi}")
    for n in range(n_lo, n_hi + 1):
        rep = (reports or {}).get(n) or scan_order(n, jobs)
        result.checked += rep.tree_count
        ext = rep.second_max
        arms = second_max_expected(n)
        target = star_like(arms)
        if ext is None:
            result.fail(target, reason="no second maximum", n=n)
            continue
        for w in ext.witnesses:
            g = w.graph
            if sum(1 for d in g.degrees() if d == 1) != 3:
                result.fail(g, reason="second maximum is not a tripod", n=n, value=ext.value)
        if _code(target) not in [w.code for w in ext.witnesses]:
            result.fail(ext.witnesses[0].graph, reason="second maximum identity", n=n,
                        expected="[" + ",".join(f"P_{a}" for a in arms) + "]",
                        witnesses=[w.to_dict() for w in ext.witnesses])
        if not ext.unique:
            result.notes.append(f"n={n}: {len(ext.witnesses)} trees tie at {ext.value}")
        result.notes.append(f"n={n}: second max {ext.value} at {describe_tree(ext.witnesses[0].graph)}")
    return result
