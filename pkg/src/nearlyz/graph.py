"""Simple undirected graphs as immutable values.

Vertices are the integers ``0..n-1``. Every mutating operation returns a new
:class:`Graph`; vertex deletion compacts the remaining ids while preserving
their relative order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, NamedTuple

Edge = tuple[int, int]


class GraphError(ValueError):
    """Raised for invalid graph construction or mutation."""


class Graph6Error(ValueError):
    """Malformed graph6 input; ``offset`` is the index of the offending byte."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


def edge(a: int, b: int) -> Edge:
    """Normalise an unordered pair to ``(min, max)``."""
    if a == b:
        raise GraphError(f"loop at vertex {a}")
    return (a, b) if a < b else (b, a)


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset[Edge] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n < 0:
            raise GraphError("negative vertex count")
        for a, b in self.edges:
            if not (0 <= a < b < self.n):
                raise GraphError(f"bad edge ({a}, {b}) for n={self.n}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        normalised = set()
        for a, b in edges:
            e = edge(a, b)
            if e in normalised:
                raise GraphError(f"duplicate edge {e}")
            normalised.add(e)
        return cls(n, frozenset(normalised))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return tuple(frozenset(s) for s in adj)

    @cached_property
    def sorted_edges(self) -> tuple[Edge, ...]:
        return tuple(sorted(self.edges))

    def neighbors(self, v: int) -> frozenset[int]:
        self._check_vertex(v)
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def degrees(self) -> list[int]:
        return [len(s) for s in self.adjacency]

    def has_edge(self, a: int, b: int) -> bool:
        return a != b and edge(a, b) in self.edges

    def _check_vertex(self, v: int) -> None:
        if not (0 <= v < self.n):
            raise GraphError(f"unknown vertex {v} (n={self.n})")

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={list(self.sorted_edges)})"


# --- construction / mutation ------------------------------------------------


def add_edge(g: Graph, a: int, b: int) -> Graph:
    g._check_vertex(a)
    g._check_vertex(b)
    e = edge(a, b)
    if e in g.edges:
        raise GraphError(f"edge {e} already present")
    return Graph(g.n, g.edges | {e})


def delete_edge(g: Graph, a: int, b: int) -> Graph:
    e = edge(a, b)
    if e not in g.edges:
        raise GraphError(f"edge {e} not present")
    return Graph(g.n, g.edges - {e})


def delete_vertices(g: Graph, s: Iterable[int]) -> Graph:
    """Return ``g - s`` with the surviving vertices renumbered in order."""
    s = set(s)
    for v in s:
        g._check_vertex(v)
    if not s:
        return g
    remap = {}
    for v in range(g.n):
        if v not in s:
            remap[v] = len(remap)
    edges = frozenset(
        (remap[a], remap[b]) for a, b in g.edges if a not in s and b not in s
    )
    return Graph(len(remap), edges)


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> Graph:
    keep = set(vertices)
    return delete_vertices(g, [v for v in range(g.n) if v not in keep])


def disjoint_union(*graphs: Graph) -> Graph:
    edges = []
    offset = 0
    for h in graphs:
        edges.extend((a + offset, b + offset) for a, b in h.edges)
        offset += h.n
    return Graph(offset, frozenset(edges))


def strip_isolated(g: Graph) -> Graph:
    iso = [v for v in range(g.n) if not g.adjacency[v]]
    return delete_vertices(g, iso) if iso else g


def relabel(g: Graph, perm: list[int]) -> Graph:
    """Return the graph with vertex ``v`` renamed to ``perm[v]``."""
    return Graph(g.n, frozenset(edge(perm[a], perm[b]) for a, b in g.edges))


# --- structure ----------------------------------------------------------------


def line_graph(g: Graph) -> Graph:
    """Vertex ``i`` of the result is the ``i``-th edge of ``g`` in sorted order."""
    index = {e: i for i, e in enumerate(g.sorted_edges)}
    out = set()
    for v in range(g.n):
        incident = sorted(index[edge(v, w)] for w in g.adjacency[v])
        out.update(combinations(incident, 2))
    return Graph(len(index), frozenset(out))


class P3Sub(NamedTuple):
    center: int
    left: int
    right: int

    @property
    def vertices(self) -> tuple[int, int, int]:
        return (self.left, self.center, self.right)


def p3_subgraphs(g: Graph) -> Iterator[P3Sub]:
    for c in range(g.n):
        for a, b in combinations(sorted(g.adjacency[c]), 2):
            yield P3Sub(c, a, b)


def p3_containing(g: Graph, v: int) -> list[P3Sub]:
    """All 2-edge paths having ``v`` as centre or as an end vertex."""
    g._check_vertex(v)
    adj = g.adjacency
    found = set()
    for a, b in combinations(sorted(adj[v]), 2):
        found.add(P3Sub(v, a, b))
    for c in adj[v]:
        for w in adj[c]:
            if w != v:
                found.add(P3Sub(c, *sorted((v, w))))
    return sorted(found)


def has_p3(g: Graph) -> bool:
    return any(len(s) >= 2 for s in g.adjacency)


def component_vertex_sets(g: Graph) -> list[list[int]]:
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        stack, comp = [s], [s]
        while stack:
            x = stack.pop()
            for y in g.adjacency[x]:
                if not seen[y]:
                    seen[y] = True
                    stack.append(y)
                    comp.append(y)
        comps.append(sorted(comp))
    return comps


def connected_components(g: Graph) -> list[Graph]:
    """Components ordered by smallest original vertex, each with compact ids."""
    return [induced_subgraph(g, c) for c in component_vertex_sets(g)]


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(component_vertex_sets(g)) == 1


def is_forest(g: Graph) -> bool:
    return g.m == g.n - len(component_vertex_sets(g))


def is_tree(g: Graph) -> bool:
    return g.n >= 1 and g.m == g.n - 1 and is_connected(g)


# --- named graphs --------------------------------------------------------------


def path_graph(n: int) -> Graph:
    return Graph(n, frozenset((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return Graph(n, frozenset(edge(i, (i + 1) % n) for i in range(n)))


def star_graph(n: int) -> Graph:
    """``K_{1,n-1}`` with centre 0."""
    return Graph(n, frozenset((0, i) for i in range(1, n)))


def complete_graph(n: int) -> Graph:
    return Graph(n, frozenset(combinations(range(n), 2)))


def empty_graph(n: int) -> Graph:
    return Graph(n)


# --- graph6 ---------------------------------------------------------------------

GRAPH6_HEADER = ">>graph6<<"
MAX_GRAPH6_N = 62


def to_graph6(g: Graph) -> str:
    if g.n > MAX_GRAPH6_N:
        raise GraphError(f"graph6 short form supports n <= {MAX_GRAPH6_N}, got {g.n}")
    bits = [
        1 if (i, j) in g.edges else 0 for j in range(1, g.n) for i in range(j)
    ]
    bits.extend([0] * (-len(bits) % 6))
    out = [chr(g.n + 63)]
    for k in range(0, len(bits), 6):
        val = 0
        for bit in bits[k : k + 6]:
            val = (val << 1) | bit
        out.append(chr(val + 63))
    return "".join(out)


def parse_graph6(text: str) -> Graph:
    s = text.strip("\r\n")
    base = 0
    if s.startswith(GRAPH6_HEADER):
        base = len(GRAPH6_HEADER)
        s = s[base:]
    if not s:
        raise Graph6Error("empty graph6 record", base)
    for i, ch in enumerate(s):
        if not (63 <= ord(ch) <= 126):
            raise Graph6Error(f"byte {ch!r} outside the graph6 range", base + i)
    n = ord(s[0]) - 63
    if n > MAX_GRAPH6_N:
        raise Graph6Error("long-form vertex counts are not supported", base)
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = s[1:]
    if len(body) < need:
        raise Graph6Error(
            f"truncated record: expected {need} data bytes, got {len(body)}",
            base + len(s),
        )
    if len(body) > need:
        raise Graph6Error("trailing bytes after graph6 record", base + 1 + need)
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = ord(body[k // 6]) - 63
            if (byte >> (5 - k % 6)) & 1:
                edges.append((i, j))
            k += 1
    if need and nbits % 6:
        pad = (ord(body[-1]) - 63) & ((1 << (6 - nbits % 6)) - 1)
        if pad:
            raise Graph6Error("non-zero padding bits", base + len(s) - 1)
    return Graph(n, frozenset(edges))


def parse_edgelist(text: str) -> Graph:
    """Parse ``"n\\na b\\n..."``; blank lines and ``#`` comments are ignored."""
    rows = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            rows.append(line.split())
    if not rows or len(rows[0]) != 1:
        raise GraphError("edge list must start with a vertex count line")
    try:
        n = int(rows[0][0])
        pairs = [(int(a), int(b)) for a, b in rows[1:]]
    except ValueError as exc:
        raise GraphError(f"malformed edge list: {exc}") from None
    return Graph.from_edges(n, pairs)


# --- canonical codes for trees -------------------------------------------------


@dataclass(frozen=True, order=True)
class CanonicalTreeCode:
    """Parenthesis encoding (1 = descend, 0 = return) of a centroid-rooted tree."""

    code: tuple[int, ...]

    def __str__(self) -> str:
        return "".join(map(str, self.code))


def tree_centroids(g: Graph) -> list[int]:
    n = g.n
    adj = g.adjacency
    parent = [-1] * n
    order = [0]
    parent[0] = 0
    for x in order:
        for y in adj[x]:
            if parent[y] == -1:
                parent[y] = x
                order.append(y)
    size = [1] * n
    for x in reversed(order[1:]):
        size[parent[x]] += size[x]
    best, cents = n, []
    for x in range(n):
        heaviest = n - size[x]
        for y in adj[x]:
            if parent[y] == x and y != 0:
                heaviest = max(heaviest, size[y])
        if heaviest < best:
            best, cents = heaviest, [x]
        elif heaviest == best:
            cents.append(x)
    return cents


def rooted_code(g: Graph, root: int) -> tuple[int, ...]:
    """AHU code of ``g`` rooted at ``root``; children sorted descending."""
    adj = g.adjacency
    parent = {root: -1}
    order = [root]
    for x in order:
        for y in adj[x]:
            if y not in parent:
                parent[y] = x
                order.append(y)
    codes: dict[int, tuple[int, ...]] = {}
    for x in reversed(order):
        kids = sorted((codes.pop(y) for y in adj[x] if parent[y] == x), reverse=True)
        flat = [1]
        for k in kids:
            flat.extend(k)
        flat.append(0)
        codes[x] = tuple(flat)
    return codes[root]


def canonical_tree_code(g: Graph) -> CanonicalTreeCode:
    if not is_tree(g):
        raise GraphError("canonical codes are defined for trees only")
    return CanonicalTreeCode(min(rooted_code(g, c) for c in tree_centroids(g)))


def tree_from_code(code: CanonicalTreeCode | tuple[int, ...]) -> Graph:
    """Rebuild the tree whose root is vertex 0 from a parenthesis code."""
    bits = code.code if isinstance(code, CanonicalTreeCode) else code
    edges = []
    stack: list[int] = []
    n = 0
    for b in bits:
        if b:
            if stack:
                edges.append((stack[-1], n))
            stack.append(n)
            n += 1
        else:
            stack.pop()
    return Graph(n, frozenset(edges))
