import json
from collections import Counter
from dataclasses import replace

import pytest

from nearlyz.extremal import (
    GoldenRow,
    VerificationResult,
    check_second_max,
    describe_tree,
    load_golden_table,
    merge_partials,
    scan_order,
    scan_range,
    second_max_expected,
    verify_max_theorem,
    verify_min_theorems,
    verify_table,
)
from nearlyz.graph import path_graph, star_graph
from nearlyz.invariants import z1_tree_dp
from nearlyz.trees import broom, count_free_trees, enumerate_free_trees, star_like


@pytest.fixture(scope="module")
def reports():
    return {n: scan_order(n) for n in range(9, 14)}


def test_scan_n9(reports):
    rep = reports[9]
    assert rep.tree_count == 47
    assert (rep.min.value, rep.second_min.value, rep.max.value) == (28, 37, 71)
    assert describe_tree(rep.min.witnesses[0].graph) == "K_1,8"
    assert describe_tree(rep.second_min.witnesses[0].graph) == "B^3_9"
    assert describe_tree(rep.max.witnesses[0].graph) == "P_9"


def test_scan_n10(reports):
    rep = reports[10]
    assert rep.max.value == 130
    assert rep.second_max.value == 126
    assert [describe_tree(w.graph) for w in rep.second_max.witnesses] == ["[P_3,P_3,P_3]"]


def test_scan_n4_is_descriptive_only():
    rep = scan_order(4)
    assert rep.tree_count == 2
    # at this size the path has the smaller value, the reverse of large orders
    assert (rep.max.value, describe_tree(rep.max.witnesses[0].graph)) == (3, "K_1,3")
    assert (rep.min.value, describe_tree(rep.min.witnesses[0].graph)) == (2, "P_4")
    with pytest.raises(ValueError):
        verify_min_theorems(4, 4)


def test_scan_matches_direct_evaluation():
    rep = scan_order(11)
    values = sorted(z1_tree_dp(t) for t in enumerate_free_trees(11))
    assert rep.min.value == values[0] and rep.max.value == values[-1]
    distinct = sorted(set(values))
    assert rep.second_min.value == distinct[1]
    assert rep.second_max.value == distinct[-2]
    assert len(rep.second_max.witnesses) == Counter(values)[distinct[-2]]


def test_scan_order_limits():
    with pytest.raises(ValueError):
        scan_order(3)
    with pytest.raises(ValueError):
        scan_order(21)
    with pytest.raises(ValueError):
        scan_order(14, max_order=13)


def test_merge_is_split_independent():
    total = count_free_trees(10)
    whole = scan_range(10, 0, total)
    for cuts in ([0, 50, total], [0, 1, 2, 3, total], [0, 105, total]):
        parts = [scan_range(10, a, b) for a, b in zip(cuts, cuts[1:])]
        assert merge_partials(parts) == whole
        assert merge_partials(parts[::-1]) == whole


def test_parallel_scan_matches_serial():
    serial = json.dumps(scan_order(11).to_dict(), sort_keys=True)
    for jobs in (2, 3):
        assert json.dumps(scan_order(11, jobs=jobs).to_dict(), sort_keys=True) == serial


def test_report_json_and_text():
    rep = scan_order(9)
    d = rep.to_dict()
    assert "elapsed" not in d and "elapsed" in rep.to_dict(timing=True)
    assert d["max"]["witnesses"][0]["shape"] == "P_9"
    assert "K_1,8" in rep.to_text()


# --- golden tables ------------------------------------------------------------------


def test_golden_tables_shape():
    t9, t10 = load_golden_table(9), load_golden_table(10)
    assert len(t9) == 47 and len(t10) == 106
    assert (min(r.value for r in t9), max(r.value for r in t9)) == (28, 71)
    assert (min(r.value for r in t10), max(r.value for r in t10)) == (36, 130)
    with pytest.raises(ValueError):
        load_golden_table(11)


@pytest.mark.parametrize("n, count", [(9, 47), (10, 106)])
def test_verify_table_passes(n, count):
    res = verify_table(n)
    assert res.passed, res.counterexamples
    assert res.checked == count


@pytest.mark.parametrize("n", [9, 10])
def test_perturbed_table_fails(n):
    rows = load_golden_table(n)
    rows[5] = replace(rows[5], value=rows[5].value + 1)
    assert not verify_table(n, rows).passed


def test_perturbed_drawing_fails():
    rows = load_golden_table(9)
    i = next(i for i, r in enumerate(rows) if r.graph6 and r.value != rows[0].value)
    swapped = GoldenRow(rows[i].index, rows[i].value, rows[i].degrees, rows[0].graph6)
    rows[i] = swapped
    assert not verify_table(9, rows).passed


def test_dropped_row_fails():
    assert not verify_table(9, load_golden_table(9)[1:]).passed


# --- theorem checks -------------------------------------------------------------------


def test_min_theorems(reports):
    res = verify_min_theorems(9, 13, reports=reports)
    assert res.passed, res.counterexamples


def test_max_theorem(reports):
    res = verify_max_theorem(9, 13, reports=reports)
    assert res.passed, res.counterexamples
    assert [reports[n].max.value for n in (9, 10)] == [71, 130]


def test_second_max(reports):
    res = check_second_max(9, 13, reports=reports)
    assert res.passed, res.counterexamples
    assert any("n=11" in note and "tie" in note for note in res.notes)


def test_second_max_expectations():
    assert second_max_expected(9) == (6, 1, 1)
    assert second_max_expected(10) == (3, 3, 3)
    assert second_max_expected(11) == (8, 1, 1)
    assert second_max_expected(15) == (8, 3, 3)


def test_second_max_witness_values():
    assert z1_tree_dp(star_like([6, 1, 1])) == 69
    assert z1_tree_dp(star_like([3, 3, 3])) == 126
    values = {z1_tree_dp(star_like(a)) for a in ([4, 3, 3], [6, 3, 1], [8, 1, 1])}
    assert values == {223}


def test_broken_report_is_caught(reports):
    bad = dict(reports)
    bad[9] = replace(reports[9], max=reports[9].second_max)
    assert not verify_max_theorem(9, 9, reports=bad).passed
    bad[9] = replace(reports[9], min=reports[9].second_min)
    assert not verify_min_theorems(9, 9, reports=bad).passed


def test_describe_tree():
    assert describe_tree(path_graph(5)) == "P_5"
    assert describe_tree(star_graph(6)) == "K_1,5"
    assert describe_tree(broom(7, 3)) == "B^3_7"
    assert describe_tree(star_like([2, 2, 1])) == "[P_2,P_2,P_1]"


def test_verification_result_status():
    res = VerificationResult("demo", "x")
    assert res.status == "pass"
    res.fail(path_graph(3), why="test")
    assert res.status == "fail" and res.counterexamples[0]["graph6"] == "Bg"
