"""Shared brute-force references. Nothing here calls the code under test's
counting routines, so tests can compare the package against them."""

from itertools import combinations, permutations

import pytest
from hypothesis import strategies as st

from nearlyz.graph import Graph


def naive_zk(g: Graph, k: int) -> int:
    edges = sorted(g.edges)
    total = 0
    for r in range(len(edges) + 1):
        for s in combinations(edges, r):
            pairs = sum(1 for e, f in combinations(s, 2) if set(e) & set(f))
            total += pairs == k
    return total


def naive_sigma1(g: Graph) -> int:
    total = 0
    for r in range(g.n + 1):
        for s in combinations(range(g.n), r):
            inside = sum(1 for a, b in g.edges if a in s and b in s)
            total += inside == 1
    return total


def brute_canonical(g: Graph) -> tuple:
    """Lexicographically smallest relabelled edge list over all permutations."""
    best = None
    for perm in permutations(range(g.n)):
        key = tuple(sorted(tuple(sorted((perm[a], perm[b]))) for a, b in g.edges))
        if best is None or key < best:
            best = key
    return best


def prufer_trees(n: int):
    from itertools import product

    if n <= 2:
        yield Graph(n, frozenset([(0, 1)] if n == 2 else []))
        return
    for seq in product(range(n), repeat=n - 2):
        degree = [1] * n
        for x in seq:
            degree[x] += 1
        edges = []
        for x in seq:
            leaf = min(v for v in range(n) if degree[v] == 1)
            edges.append(tuple(sorted((leaf, x))))
            degree[leaf] -= 1
            degree[x] -= 1
        u, w = [v for v in range(n) if degree[v] == 1]
        edges.append((u, w))
        yield Graph(n, frozenset(edges))


def to_nx(g: Graph):
    import networkx as nx

    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


@st.composite
def graphs(draw, max_n: int = 7, max_m: int | None = None):
    n = draw(st.integers(min_value=0, max_value=max_n))
    pairs = list(combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=max_m)) if pairs else []
    return Graph(n, frozenset(chosen))


@st.composite
def trees(draw, min_n: int = 1, max_n: int = 10):
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    parents = [draw(st.integers(min_value=0, max_value=i - 1)) for i in range(1, n)]
    return Graph(n, frozenset((p, i) for i, p in enumerate(parents, start=1)))


@pytest.fixture(scope="session")
def small_trees():
    from nearlyz.trees import enumerate_free_trees

    return {n: list(enumerate_free_trees(n)) for n in range(1, 11)}


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if test_acceptance.VERDICTS:
        terminalreporter.section("acceptance criteria")
        for number in sorted(test_acceptance.VERDICTS):
            terminalreporter.write_line(test_acceptance.VERDICTS[number])
