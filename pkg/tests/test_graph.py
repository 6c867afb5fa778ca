from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given, settings

from nearlyz.graph import (
    Graph,
    Graph6Error,
    GraphError,
    P3Sub,
    add_edge,
    canonical_tree_code,
    complete_graph,
    connected_components,
    cycle_graph,
    delete_edge,
    delete_vertices,
    disjoint_union,
    empty_graph,
    line_graph,
    p3_containing,
    parse_edgelist,
    parse_graph6,
    path_graph,
    relabel,
    star_graph,
    to_graph6,
    tree_from_code,
)
from nearlyz.trees import enumerate_free_trees

from .conftest import brute_canonical, graphs, to_nx, trees


def nx_graph6(g: Graph) -> str:
    return nx.to_graph6_bytes(to_nx(g), header=False).decode().strip()


# --- graph6 -------------------------------------------------------------------------


def test_graph6_roundtrip_d_code():
    assert to_graph6(parse_graph6("D?{")) == "D?{"


def test_graph6_path4_matches_reference_encoder():
    code = nx_graph6(path_graph(4))
    assert parse_graph6(code).edges == {(0, 1), (1, 2), (2, 3)}


def test_graph6_edgeless():
    g = parse_graph6(to_graph6(empty_graph(3)))
    assert (g.n, g.m) == (3, 0)


@pytest.mark.parametrize("g", [empty_graph(1), path_graph(2), cycle_graph(5), complete_graph(7)])
def test_graph6_matches_networkx(g):
    assert to_graph6(g) == nx_graph6(g)


def test_graph6_single_vertex():
    assert to_graph6(empty_graph(1)) == "@"


def test_graph6_header_accepted():
    assert parse_graph6(">>graph6<<Ch") == parse_graph6("Ch")


@pytest.mark.parametrize(
    "text, offset",
    [("C\x01", 1), ("D?", 2), ("Ch??", 2), ("", 0), ("B~", 1)],
)
def test_graph6_errors_name_offset(text, offset):
    with pytest.raises(Graph6Error) as err:
        parse_graph6(text)
    assert err.value.offset == offset


def test_graph6_too_large():
    with pytest.raises(GraphError):
        to_graph6(path_graph(63))


@given(graphs(max_n=9))
def test_graph6_roundtrip_property(g):
    assert parse_graph6(to_graph6(g)) == g
    assert to_graph6(g) == nx_graph6(g)


def test_graph6_roundtrip_all_trees_up_to_12():
    for n in range(1, 13):
        for t in enumerate_free_trees(n):
            assert parse_graph6(to_graph6(t)) == t


def test_edgelist():
    g = parse_edgelist("4\n0 1\n1 2  # middle\n2 3\n")
    assert g == path_graph(4)
    with pytest.raises(GraphError):
        parse_edgelist("3\n0 1\n1 0\n")


# --- mutation ----------------------------------------------------------------------


def test_delete_middle_of_p5():
    parts = connected_components(delete_vertices(path_graph(5), [2]))
    assert [c.n for c in parts] == [2, 2] and all(c.m == 1 for c in parts)


def test_delete_star_centre():
    g = delete_vertices(star_graph(5), [0])
    assert (g.n, g.m) == (4, 0)


def test_delete_nothing():
    assert delete_vertices(path_graph(4), []) == path_graph(4)


def test_delete_unknown_vertex():
    with pytest.raises(GraphError):
        delete_vertices(path_graph(3), [3])


@given(graphs(max_n=8))
def test_delete_vertices_property(g):
    s = set(range(0, g.n, 2))
    h = delete_vertices(g, s)
    assert h.n == g.n - len(s)
    assert h.m == sum(1 for a, b in g.edges if a not in s and b not in s)


def test_add_edge_closes_cycle():
    g = add_edge(path_graph(4), 0, 3)
    assert to_graph6(g) == to_graph6(relabel(cycle_graph(4), [0, 1, 2, 3]))


def test_delete_edge_opens_cycle():
    assert delete_edge(cycle_graph(4), 0, 3) == path_graph(4)


def test_delete_then_add_is_identity():
    g = cycle_graph(5)
    assert add_edge(delete_edge(g, 1, 2), 2, 1) == g


@pytest.mark.parametrize("op", ["dup", "loop", "missing"])
def test_edge_errors(op):
    with pytest.raises(GraphError):
        if op == "dup":
            add_edge(path_graph(3), 0, 1)
        elif op == "loop":
            add_edge(path_graph(3), 1, 1)
        else:
            delete_edge(path_graph(3), 0, 2)


# --- line graphs / P3s ------------------------------------------------------------


@pytest.mark.parametrize("n", range(2, 9))
def test_line_graph_of_path_and_cycle(n):
    assert nx.is_isomorphic(to_nx(line_graph(path_graph(n))), to_nx(path_graph(n - 1)))
    if n >= 3:
        assert nx.is_isomorphic(to_nx(line_graph(cycle_graph(n))), to_nx(cycle_graph(n)))


def test_line_graph_of_claw_is_triangle():
    assert line_graph(star_graph(4)) == complete_graph(3)


def test_line_graph_empty():
    assert line_graph(empty_graph(0)) == empty_graph(0)


@given(graphs(max_n=8))
def test_line_graph_counts(g):
    lg = line_graph(g)
    assert lg.n == g.m
    assert lg.m == sum(d * (d - 1) // 2 for d in g.degrees())
    assert nx.is_isomorphic(to_nx(lg), nx.line_graph(to_nx(g)))


def test_p3_examples():
    p3 = path_graph(3)
    assert p3_containing(p3, 1) == [P3Sub(1, 0, 2)]
    assert p3_containing(p3, 0) == [P3Sub(1, 0, 2)]
    assert len(p3_containing(star_graph(5), 0)) == 6


@settings(max_examples=200)
@given(graphs(max_n=7, max_m=10))
def test_p3_containing_brute_force(g):
    for v in range(g.n):
        brute = sum(
            1
            for e, f in combinations(sorted(g.edges), 2)
            if set(e) & set(f) and v in set(e) | set(f)
        )
        assert len(p3_containing(g, v)) == brute


def test_components():
    g = disjoint_union(path_graph(3), path_graph(2))
    assert [c.n for c in connected_components(g)] == [3, 2]
    assert connected_components(path_graph(5)) == [path_graph(5)]
    assert [c.n for c in connected_components(empty_graph(4))] == [1, 1, 1, 1]


# --- canonical codes ----------------------------------------------------------------


def test_code_invariant_under_relabelling():
    g = path_graph(4)
    assert canonical_tree_code(g) == canonical_tree_code(relabel(g, [2, 0, 3, 1]))
    assert canonical_tree_code(g) != canonical_tree_code(star_graph(4))


def test_code_rejects_non_trees():
    with pytest.raises(GraphError):
        canonical_tree_code(cycle_graph(4))
    with pytest.raises(GraphError):
        canonical_tree_code(disjoint_union(path_graph(2), path_graph(2)))


@given(trees(max_n=12))
def test_code_roundtrip(t):
    code = canonical_tree_code(t)
    assert canonical_tree_code(tree_from_code(code)) == code
    assert nx.is_isomorphic(to_nx(tree_from_code(code)), to_nx(t))


def test_code_matches_permutation_isomorphism_up_to_7():
    by_brute = {}
    by_code = {}
    for n in range(1, 8):
        labelled = []
        for t in enumerate_free_trees(n):
            # scramble labels so the code sees a non-canonical numbering
            perm = list(range(n))[::-1]
            labelled.append(relabel(t, perm))
            labelled.append(t)
        for g in labelled:
            by_brute.setdefault(brute_canonical(g), set()).add(canonical_tree_code(g))
            by_code.setdefault(canonical_tree_code(g), set()).add(brute_canonical(g))
    assert all(len(v) == 1 for v in by_brute.values())
    assert all(len(v) == 1 for v in by_code.values())


def test_code_matches_networkx_isomorphism_n8_n9():
    for n in (8, 9):
        ts = list(enumerate_free_trees(n))
        for a, b in combinations(ts[:20], 2):
            same = nx.is_isomorphic(to_nx(a), to_nx(b))
            assert same == (canonical_tree_code(a) == canonical_tree_code(b))


def test_47_distinct_codes_at_9():
    codes = {canonical_tree_code(t) for t in enumerate_free_trees(9)}
    assert len(codes) == 47
