"""Acceptance criteria 1-8, each at its own time budget.

Every test records a one-line PASS/FAIL verdict in ``VERDICTS``; the line is
printed immediately and again in pytest's terminal summary. The file also runs
standalone: ``python tests/test_acceptance.py``.
"""

import io
import time
from contextlib import contextmanager

from nearlyz.checks import (
    LemmaConfig,
    closed_form_suite,
    identity_suite,
    monotonicity_suite,
    verify_lemma_inequalities,
)
from nearlyz.cli import main
from nearlyz.extremal import (
    check_second_max,
    load_golden_table,
    scan_order,
    verify_max_theorem,
    verify_min_theorems,
    verify_table,
)
from nearlyz.graph import path_graph, to_graph6
from nearlyz.invariants import z0, z0_path_closed, zk_oracle
from nearlyz.trees import count_free_trees, enumerate_free_trees

VERDICTS: dict[int, str] = {}


@contextmanager
def criterion(number: int, title: str, budget: float):
    state = {"problems": []}
    start = time.perf_counter()
    try:
        yield state["problems"]
    finally:
        elapsed = time.perf_counter() - start
        problems = state["problems"]
        if elapsed > budget:
            problems.append(f"took {elapsed:.1f}s > {budget:.0f}s")
        verdict = "PASS" if not problems else "FAIL"
        line = f"criterion {number}: {verdict}  {title}  ({elapsed:.2f}s)"
        if problems:
            line += "  -- " + "; ".join(str(p) for p in problems[:4])
        VERDICTS[number] = line
        print(line)
    assert not problems, line


def _failures(results):
    out = []
    for r in results:
        if not r.passed:
            out.append(f"{r.claim} {r.tested}: {len(r.counterexamples)} counterexample(s), "
                       f"first {r.counterexamples[0]}")
    return out


def test_criterion_1_golden_tables():
    with criterion(1, "golden Z_1 tables n=9,10", 5) as problems:
        for n, size, lo, hi in ((9, 47, 28, 71), (10, 106, 36, 130)):
            values = [r.value for r in load_golden_table(n)]
            if (len(values), min(values), max(values)) != (size, lo, hi):
                problems.append(f"table n={n} shape {len(values)}/{min(values)}/{max(values)}")
            problems += _failures([verify_table(n)])


def test_criterion_2_closed_forms():
    with criterion(2, "closed forms vs oracles", 10) as problems:
        problems += _failures([closed_form_suite(path_n_max=20, cycle_n_max=12)])
        p5 = path_graph(5)
        if not zk_oracle(p5, 0) == z0(p5) == z0_path_closed(5) == 8:
            problems.append("Z_0(P_5) is not 8")


def test_criterion_3_identities():
    with criterion(3, "pivot recursion, line graph, multiplicativity, partition", 60) as problems:
        results = identity_suite(seed=0, forests=100)
        problems += _failures(results.values())
        if results["multiplicativity"].checked != 100:
            problems.append("multiplicativity did not cover 100 forests")


def test_criterion_4_extremal_theorems():
    with criterion(4, "unique min/second-min/max for 9<=n<=13", 60) as problems:
        reports = {n: scan_order(n) for n in range(9, 14)}
        problems += _failures([
            verify_min_theorems(9, 13, reports=reports),
            verify_max_theorem(9, 13, reports=reports),
        ])


def test_criterion_5_second_max():
    with criterion(5, "second-max tripods for 9<=n<=16", 300) as problems:
        reports = {n: scan_order(n) for n in range(9, 17)}
        problems += _failures([check_second_max(9, 16, reports=reports)])
        if reports[10].second_max is None or reports[10].second_max.value != 126:
            problems.append("second max at n=10 is not 126")


def test_criterion_6_lemma_inequalities():
    with criterion(6, "inequality lemmas (paths<=200, trees<=12)", 300) as problems:
        problems += _failures(verify_lemma_inequalities(LemmaConfig()).values())


def test_criterion_7_monotonicity():
    with criterion(7, "monotonicity over 500 seeded instances", 60) as problems:
        res = monotonicity_suite(seed=0, trials=500)
        problems += _failures([res])


def _cli(argv):
    out = io.StringIO()
    code = main(argv, out)
    return code, out.getvalue()


def test_criterion_8_determinism():
    with criterion(8, "scan JSON independent of jobs; slices concatenate", 120) as problems:
        outputs = [_cli(["scan", "--n", "12", "--jobs", j, "--json"]) for j in ("1", "2", "8")]
        if any(code for code, _ in outputs) or len({text for _, text in outputs}) != 1:
            problems.append("scan --n 12 output differs across --jobs")
        full = [to_graph6(t) for t in enumerate_free_trees(12)]
        total = count_free_trees(12)
        for cuts in ((0, total), (0, 1, 275, total), tuple(range(0, total, 97)) + (total,)):
            pieces = []
            for a, b in zip(cuts, cuts[1:]):
                pieces += [to_graph6(t) for t in enumerate_free_trees(12, a, b)]
            if pieces != full:
                problems.append(f"slices {cuts[:4]}... do not reproduce the stream")
        code, text = _cli(["enumerate", "--n", "12"])
        if text.split() != full:
            problems.append("CLI enumeration differs from the library stream")


if __name__ == "__main__":
    import sys

    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
