"""Free tree enumeration and the named tree families.

Free trees are produced as level sequences with the constant-amortised-time
successor rule of Wright, Richmond, Odlyzko and McKay: a rooted-tree successor
step followed by a repair that keeps the root at the centre so every
isomorphism class appears once.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import islice
from typing import Iterator, Sequence

from .graph import (
    Graph,
    GraphError,
    component_vertex_sets,
    cycle_graph,
    delete_vertices,
    induced_subgraph,
    is_tree,
    path_graph,
    star_graph,
)

MAX_ENUM_ORDER = 24


# --- level sequences ------------------------------------------------------------


def level_sequence_to_graph(levels: Sequence[int]) -> Graph:
    """Preorder depths (root depth 0 or 1) to a tree on ``0..n-1``."""
    edges = []
    last_at: dict[int, int] = {}
    for i, depth in enumerate(levels):
        if i:
            edges.append((last_at[depth - 1], i))
        last_at[depth] = i
    return Graph(len(levels), frozenset(edges))


def _next_rooted(seq: list[int], p: int | None = None) -> list[int] | None:
    if p is None:
        p = len(seq) - 1
        while seq[p] == 1:
            p -= 1
    if p == 0:
        return None
    q = p - 1
    while seq[q] != seq[p] - 1:
        q -= 1
    out = list(seq)
    for i in range(p, len(out)):
        out[i] = out[i - p + q]
    return out


def _split(seq: list[int]) -> tuple[list[int], list[int]]:
    """Split off the first subtree of the root (depths lowered by one) from the rest."""
    m = len(seq)
    for i in range(2, len(seq)):
        if seq[i] == 1:
            m = i
            break
    left = [d - 1 for d in seq[1:m]]
    rest = [0] + seq[m:]
    return left, rest


def _repair(seq: list[int]) -> list[int]:
    """Advance ``seq`` until its root is a centre and the first subtree is
    no larger than the rest; returns the first valid sequence at or after it."""
    left, rest = _split(seq)
    lh, rh = max(left), max(rest)
    ok = rh >= lh
    if ok and rh == lh:
        if len(left) > len(rest) or (len(left) == len(rest) and left > rest):
            ok = False
    if ok:
        return seq
    p = len(left)
    nxt = _next_rooted(seq, p)
    if seq[p] > 2:
        new_left, _ = _split(nxt)
        tail = list(range(1, max(new_left) + 2))
        nxt[-len(tail):] = tail
    return nxt


def free_tree_level_sequences(n: int) -> Iterator[tuple[int, ...]]:
    """Level sequences (root at depth 0) of every free tree on ``n`` vertices.

    Sequences come out in decreasing lexicographic order.
    """
    if not 1 <= n <= MAX_ENUM_ORDER:
        raise ValueError(f"tree order must be in 1..{MAX_ENUM_ORDER}, got {n}")
    if n <= 3:
        yield tuple(range(n)) if n < 3 else (0, 1, 1)
        return
    seq: list[int] | None = list(range(n // 2 + 1)) + list(range(1, (n + 1) // 2))
    while seq is not None:
        seq = _repair(seq)
        if seq is None:
            return
        yield tuple(seq)
        seq = _next_rooted(seq)


def enumerate_free_trees(n: int, start: int = 0, stop: int | None = None) -> Iterator[Graph]:
    """Every isomorphism class of trees on ``n`` vertices exactly once.

    ``start``/``stop`` select a contiguous index range of the deterministic
    stream; concatenating ranges reproduces the full stream.
    """
    for levels in islice(free_tree_level_sequences(n), start, stop):
        yield level_sequence_to_graph(levels)


@lru_cache(maxsize=None)
def _rooted_counts(n: int) -> tuple[int, ...]:
    # r[k]: rooted unlabeled trees on k vertices
    r = [0, 1]
    for k in range(1, n):
        total = 0
        for i in range(1, k + 1):
            s = sum(d * r[d] for d in range(1, i + 1) if i % d == 0)
            total += s * r[k - i + 1]
        r.append(total // k)
    return tuple(r)


def count_free_trees(n: int) -> int:
    """Number of free trees on ``n`` vertices by Otter's dissimilarity formula."""
    if n < 1:
        raise ValueError("n must be positive")
    r = _rooted_counts(n)
    pairs = sum(r[i] * r[n - i] for i in range(1, n))
    if n % 2 == 0:
        pairs -= r[n // 2]
    return r[n] - pairs // 2


# --- families ----------------------------------------------------------------------

FAMILY_KINDS = ("path", "cycle", "star", "broom", "star_like")


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    n: int = 0
    k: int | None = None
    branches: tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.kind not in FAMILY_KINDS:
            raise ValueError(f"unknown family {self.kind!r}")
        if self.kind == "star_like":
            if not self.branches or min(self.branches) < 1:
                raise ValueError("star_like branches must be positive lengths")
            order = sum(self.branches) + 1
            if self.n and self.n != order:
                raise ValueError(f"branches give order {order}, not {self.n}")
            object.__setattr__(self, "n", order)
        elif self.kind == "cycle":
            if self.n < 3:
                raise ValueError("cycle needs n >= 3")
        elif self.kind == "broom":
            if self.k is None or not 3 <= self.k <= self.n:
                raise ValueError("broom needs 3 <= k <= n")
        elif self.n < 1:
            raise ValueError(f"{self.kind} needs n >= 1")


def broom(n: int, k: int) -> Graph:
    """``B^k_n``: a path on ``k`` vertices with ``n - k`` pendant vertices at one end.

    The loaded end is vertex 0, the handle is ``0..k-1``.
    """
    if not 3 <= k <= n:
        raise GraphError("broom needs 3 <= k <= n")
    edges = [(i, i + 1) for i in range(k - 1)]
    edges += [(0, j) for j in range(k, n)]
    return Graph(n, frozenset(edges))


def star_like(branches: Sequence[int]) -> Graph:
    """Spider ``[P_{n_1}, ..., P_{n_j}]`` with the branching vertex at 0."""
    if any(b < 1 for b in branches):
        raise GraphError("branch lengths must be positive")
    edges = []
    nxt = 1
    for length in branches:
        prev = 0
        for _ in range(length):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return Graph(nxt, frozenset(edges))


def make_family(spec: FamilySpec) -> Graph:
    if spec.kind == "path":
        return path_graph(spec.n)
    if spec.kind == "cycle":
        return cycle_graph(spec.n)
    if spec.kind == "star":
        return star_graph(spec.n)
    if spec.kind == "broom":
        return broom(spec.n, spec.k)
    return star_like(spec.branches)


@dataclass(frozen=True)
class RootedTree:
    graph: Graph
    root: int = 0


def attach_branches(branches: Sequence[RootedTree]) -> RootedTree:
    """``[T_1, ..., T_j]``: a new root 0 joined to the root of every branch."""
    edges = []
    offset = 1
    for br in branches:
        if not is_tree(br.graph):
            raise GraphError("every branch must be a tree")
        edges.extend((a + offset, b + offset) for a, b in br.graph.edges)
        edges.append((0, br.root + offset))
        offset += br.graph.n
    return RootedTree(Graph(offset, frozenset(edges)), 0)


def rooted_path(n: int) -> RootedTree:
    """``P_n`` rooted at an end vertex."""
    return RootedTree(path_graph(n), 0)


def branches_at(g: Graph, v: int) -> list[RootedTree]:
    """The rooted branches of tree ``g`` hanging off vertex ``v``."""
    h = delete_vertices(g, [v])
    roots = {w - (w > v) for w in g.adjacency[v]}
    out = []
    for comp in component_vertex_sets(h):
        (r,) = [i for i, x in enumerate(comp) if x in roots]
        out.append(RootedTree(induced_subgraph(h, comp), r))
    return out


def is_end_rooted_path(t: RootedTree) -> bool:
    g = t.graph
    if g.n == 1:
        return True
    return g.m == g.n - 1 and max(g.degrees()) <= 2 and g.degree(t.root) == 1 and is_tree(g)


def spider_branches(g: Graph) -> tuple[int, ...] | None:
    """Branch lengths (descending) if ``g`` is a tree with at most one vertex of
    degree above 2; paths report their two arms from a middle vertex."""
    if not is_tree(g):
        return None
    degs = g.degrees()
    hubs = [v for v in range(g.n) if degs[v] > 2]
    if len(hubs) > 1:
        return None
    if not hubs:
        return (g.n - 1 - (g.n - 1) // 2, (g.n - 1) // 2) if g.n > 2 else (g.n - 1,)
    hub = hubs[0]
    return tuple(sorted((br.graph.n for br in branches_at(g, hub)), reverse=True))
