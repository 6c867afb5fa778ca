"""Exact counts of nearly independent edge subsets.

``Z_k(G)`` is the number of edge subsets containing exactly ``k`` unordered
pairs of edges that share an end vertex; ``Z_0`` is the Hosoya index.
``sigma1(G)`` counts vertex subsets whose induced subgraph has exactly one
edge. All results are Python ints.

Three independent routes are provided for ``Z_1``: exhaustive enumeration
(:func:`zk_oracle`), the vertex-deletion recursion (:func:`z1_recursive`), and
a linear dynamic program on forests (:func:`z1_tree_dp`). Paths, cycles,
stars and brooms also have closed forms evaluated through Fibonacci and Lucas
numbers.
"""

from __future__ import annotations

import os
from collections import Counter
from math import comb

from .graph import (
    Graph,
    GraphError,
    component_vertex_sets,
    delete_vertices,
    induced_subgraph,
    is_forest,
    line_graph,
    p3_containing,
    strip_isolated,
    to_graph6,
)

DEFAULT_ORACLE_CAP = 24
ORACLE_CAP_ENV = "NEARLYZ_ORACLE_CAP"

# Past this many edges the Gray-code walk hands over to the numpy sweep.
_VECTOR_THRESHOLD = 17


class OracleCapExceeded(RuntimeError):
    """The brute-force oracle refuses inputs above its size cap."""


def oracle_cap(cap: int | None = None) -> int:
    if cap is not None:
        return cap
    env = os.environ.get(ORACLE_CAP_ENV)
    if env:
        try:
            return int(env)
        except ValueError:
            raise ValueError(f"{ORACLE_CAP_ENV} must be an integer, got {env!r}") from None
    return DEFAULT_ORACLE_CAP


# --- brute-force oracles ----------------------------------------------------------


def count_adjacent_pairs(g: Graph, s) -> int:
    """Number of unordered pairs of edges in ``s`` sharing an end vertex."""
    incidence = Counter()
    seen = set()
    for a, b in s:
        e = (a, b) if a < b else (b, a)
        if e not in g.edges:
            raise GraphError(f"edge {e} is not in the graph")
        if e in seen:
            continue
        seen.add(e)
        incidence[a] += 1
        incidence[b] += 1
    return sum(comb(t, 2) for t in incidence.values())


def _check_edge_cap(g: Graph, cap: int | None) -> None:
    limit = oracle_cap(cap)
    if g.m > limit:
        raise OracleCapExceeded(f"oracle refuses m={g.m} > cap {limit}")


def _spectrum_gray(g: Graph) -> list[int]:
    ends = g.sorted_edges
    m = len(ends)
    t = [0] * g.n
    on = [False] * m
    hist = [0] * (comb(m, 2) + 1)
    hist[0] = 1
    pairs = 0
    for i in range(1, 1 << m):
        j = (i & -i).bit_length() - 1
        a, b = ends[j]
        if on[j]:
            t[a] -= 1
            t[b] -= 1
            pairs -= t[a] + t[b]
        else:
            pairs += t[a] + t[b]
            t[a] += 1
            t[b] += 1
        on[j] = not on[j]
        hist[pairs] += 1
    return hist


def _spectrum_vectorised(g: Graph) -> list[int]:
    import numpy as np

    ends = g.sorted_edges
    m = len(ends)
    inc = [0] * g.n
    for j, (a, b) in enumerate(ends):
        inc[a] |= 1 << j
        inc[b] |= 1 << j
    pop16 = np.array([bin(x).count("1") for x in range(1 << 16)], dtype=np.int64)
    hist = np.zeros(comb(m, 2) + 1, dtype=np.int64)
    chunk = 1 << 20
    for lo in range(0, 1 << m, chunk):
        masks = np.arange(lo, min(lo + chunk, 1 << m), dtype=np.int64)
        pairs = np.zeros_like(masks)
        for mask in inc:
            if mask:
                sel = masks & mask
                t = pop16[sel & 0xFFFF] + pop16[sel >> 16]
                pairs += t * (t - 1) // 2
        hist += np.bincount(pairs, minlength=len(hist))
    return [int(x) for x in hist]


def zk_spectrum(g: Graph, cap: int | None = None) -> list[int]:
    """``[Z_0(g), Z_1(g), ...]`` up to ``Z_{C(m,2)}`` by exhaustive enumeration."""
    _check_edge_cap(g, cap)
    if g.m >= _VECTOR_THRESHOLD:
        return _spectrum_vectorised(g)
    return _spectrum_gray(g)


def zk_oracle(g: Graph, k: int, cap: int | None = None) -> int:
    if k < 0:
        raise ValueError("k must be nonnegative")
    spectrum = zk_spectrum(g, cap)
    return spectrum[k] if k < len(spectrum) else 0


def sigma1_oracle(g: Graph, cap: int | None = None) -> int:
    """Vertex subsets whose induced subgraph has exactly one edge."""
    limit = oracle_cap(cap)
    if g.n > limit:
        raise OracleCapExceeded(f"oracle refuses n={g.n} > cap {limit}")
    adjmask = [sum(1 << w for w in g.adjacency[v]) for v in range(g.n)]
    chosen = 0
    inside = 0
    total = 0
    for i in range(1, 1 << g.n):
        v = (i & -i).bit_length() - 1
        if chosen >> v & 1:
            chosen ^= 1 << v
            inside -= (adjmask[v] & chosen).bit_count()
        else:
            inside += (adjmask[v] & chosen).bit_count()
            chosen ^= 1 << v
        if inside == 1:
            total += 1
    return total


# --- Z_0 ---------------------------------------------------------------------------


def _rooted_order(g: Graph, vertices: list[int]) -> tuple[list[int], dict[int, int]]:
    root = vertices[0]
    parent = {root: -1}
    order = [root]
    adj = g.adjacency
    for x in order:
        for y in adj[x]:
            if y not in parent:
                parent[y] = x
                order.append(y)
    return order, parent


def _tree_z0(g: Graph, vertices: list[int]) -> int:
    order, parent = _rooted_order(g, vertices)
    free = {}  # matchings of the subtree leaving the root uncovered
    total = {}
    for x in reversed(order):
        kids = [y for y in g.adjacency[x] if parent[y] == x]
        prod = 1
        for y in kids:
            prod *= total[y]
        covered = 0
        for y in kids:
            covered += free[y] * prod // total[y]
        free[x] = prod
        total[x] = prod + covered
    return total[order[0]]


def _z0_general(g: Graph, memo: dict[str, int]) -> int:
    g = strip_isolated(g)
    if g.m <= 1:
        return g.m + 1
    key = to_graph6(g)
    if key in memo:
        return memo[key]
    comps = component_vertex_sets(g)
    if len(comps) > 1:
        val = 1
        for c in comps:
            val *= _z0_general(induced_subgraph(g, c), memo)
    elif g.m == g.n - 1:
        val = _tree_z0(g, [0])
    else:
        # branch on an edge at a maximum-degree vertex
        v = max(range(g.n), key=lambda x: len(g.adjacency[x]))
        u = min(g.adjacency[v])
        without = Graph(g.n, g.edges - {(min(u, v), max(u, v))})
        val = _z0_general(without, memo) + _z0_general(delete_vertices(g, (u, v)), memo)
    memo[key] = val
    return val


def z0(g: Graph) -> int:
    """Hosoya index, multiplied over connected components."""
    val = 1
    memo: dict[str, int] = {}
    for comp in component_vertex_sets(g):
        if len(comp) == 1:
            continue
        sub = induced_subgraph(g, comp)
        if sub.m == sub.n - 1:
            val *= _tree_z0(sub, list(range(sub.n)))
        else:
            val *= _z0_general(sub, memo)
    return val


# --- Z_1 by recursion -----------------------------------------------------------------


def find_pseudo_leaf(g: Graph, min_degree: int = 1) -> tuple[int, int, int, int]:
    """``(v, z, u, d)``: a pseudo-leaf ``v`` of degree ``d >= min_degree`` in the
    forest ``g``, a leaf neighbour ``z`` and a maximum-degree neighbour ``u``
    (other than ``z`` whenever ``d >= 2``).

    Ties are resolved towards the smallest vertex id.
    """
    if g.m == 0:
        raise GraphError("a pseudo-leaf needs at least one edge")
    if not is_forest(g):
        raise GraphError("pseudo-leaves are defined for forests")
    adj = g.adjacency
    for v in range(g.n):
        if len(adj[v]) < max(min_degree, 1):
            continue
        if sum(1 for w in adj[v] if len(adj[w]) > 1) > 1:
            continue
        leaves = sorted(w for w in adj[v] if len(adj[w]) == 1)
        if not leaves:
            continue
        z = leaves[0]
        rest = [w for w in adj[v] if w != z] or [z]
        u = min(rest, key=lambda w: (-len(adj[w]), w))
        return v, z, u, len(adj[v])
    raise GraphError(f"no pseudo-leaf of degree >= {min_degree}")


def _z1_rec(g: Graph, memo: dict[str, int], z0_memo: dict[str, int]) -> int:
    g = strip_isolated(g)
    if g.m < 2:
        return 0
    key = to_graph6(g)
    if key in memo:
        return memo[key]
    if g.m == g.n - len(component_vertex_sets(g)):
        if max(len(a) for a in g.adjacency) < 2:
            memo[key] = 0
            return 0
        v, z, u, d = find_pseudo_leaf(g, min_degree=2)
        adj = g.adjacency
        # d - 2 further paths z-v-w end at a leaf w other than z and u
        val = (
            _z1_rec(delete_vertices(g, [z]), memo, z0_memo)
            + _z1_rec(delete_vertices(g, [z, v]), memo, z0_memo)
            + _z0_general(delete_vertices(g, adj[v]), z0_memo)
            + (d - 2) * _z0_general(delete_vertices(g, (adj[v] | {v}) - {u}), z0_memo)
        )
    else:
        z = min(range(g.n), key=lambda x: (len(g.adjacency[x]), x))
        val = lemma_rec_terms(g, z, lambda h: _z1_rec(h, memo, z0_memo),
                              lambda h: _z0_general(h, z0_memo))
    memo[key] = val
    return val


def lemma_rec_terms(g: Graph, z: int, z1, z0_fn) -> int:
    """Right-hand side of the pivot recursion at vertex ``z``.

    ``Z_1(G - z) + sum over neighbours v of Z_1(G - z - v)
    + sum over 2-edge paths P through z of Z_0(G - P)``.
    """
    total = z1(delete_vertices(g, [z]))
    for v in sorted(g.neighbors(z)):
        total += z1(delete_vertices(g, [z, v]))
    for p in p3_containing(g, z):
        total += z0_fn(delete_vertices(g, p.vertices))
    return total


def z1_recursive(g: Graph) -> int:
    """``Z_1`` through the pivot-vertex recursion with graph6-keyed memoisation.

    Forests pivot on a leaf ``z`` of a pseudo-leaf ``v``; any other graph pivots
    on a minimum-degree vertex.
    """
    if g.m < 2:
        return 0
    return _z1_rec(g, {}, {})


# --- Z_1 by tree DP -----------------------------------------------------------------


def _tree_z01(g: Graph, vertices: list[int]) -> tuple[int, int]:
    """``(Z_0, Z_1)`` of one tree component."""
    order, parent = _rooted_order(g, vertices)
    # state[x][p][t]: subsets inside the subtree of x with p adjacent pairs and
    # t chosen edges at x (t = 2 already contributes its pair to p)
    states: dict[int, list[list[int]]] = {}
    for x in reversed(order):
        cur = [[1, 0, 0], [0, 0, 0]]
        for y in g.adjacency[x]:
            if parent[y] != x:
                continue
            child = states.pop(y)
            nxt = [[0, 0, 0], [0, 0, 0]]
            for p in (0, 1):
                for t in (0, 1, 2):
                    here = cur[p][t]
                    if not here:
                        continue
                    for cp in (0, 1):
                        for ct in (0, 1, 2):
                            ways = child[cp][ct]
                            if not ways:
                                continue
                            # edge x-y left out
                            if p + cp <= 1:
                                nxt[p + cp][t] += here * ways
                            # edge x-y chosen: it meets t edges at x and ct at y
                            q = p + cp + t + ct
                            if q <= 1 and t < 2:
                                nxt[q][t + 1] += here * ways
            cur = nxt
        states[x] = cur
    root = states[order[0]]
    return sum(root[0]), sum(root[1])


def z1_tree_dp(g: Graph) -> int:
    """``Z_1`` of a forest in linear time."""
    if not is_forest(g):
        raise GraphError("z1_tree_dp requires a forest")
    a0, a1 = 1, 0
    for comp in component_vertex_sets(g):
        b0, b1 = _tree_z01(g, comp)
        a0, a1 = a0 * b0, a0 * b1 + a1 * b0
    return a1


def z0_tree_dp(g: Graph) -> int:
    if not is_forest(g):
        raise GraphError("z0_tree_dp requires a forest")
    val = 1
    for comp in component_vertex_sets(g):
        val *= _tree_z0(g, comp)
    return val


def z1(g: Graph) -> int:
    """``Z_1`` by the fastest applicable exact method."""
    if is_forest(g):
        return z1_tree_dp(g)
    return z1_recursive(g)


# --- Fibonacci / Lucas closed forms ---------------------------------------------------


def fibonacci(n: int) -> int:
    """``F_n`` with ``F_0 = 0``, ``F_1 = 1``; negative indices follow
    ``F_{-n} = (-1)^{n+1} F_n``."""
    if n < 0:
        f = fibonacci(-n)
        return f if n % 2 else -f
    a, b = 0, 1
    for bit in bin(n)[2:]:
        # fast doubling
        c = a * (2 * b - a)
        d = a * a + b * b
        a, b = (d, c + d) if bit == "1" else (c, d)
    return a


def lucas(n: int) -> int:
    """``L_n = F_{n-1} + F_{n+1}`` (``L_0 = 2``, ``L_1 = 1``)."""
    return fibonacci(n - 1) + fibonacci(n + 1)


def _exact_div5(num: int) -> int:
    q, r = divmod(num, 5)
    if r:
        raise ArithmeticError(f"{num} is not divisible by 5")
    return q


def z0_path_closed(n: int) -> int:
    if n < 0:
        raise ValueError("path order must be nonnegative")
    return fibonacci(n + 1)


def sigma1_path_closed(n: int) -> int:
    if n < 0:
        raise ValueError("path order must be nonnegative")
    return _exact_div5((n - 1) * lucas(n) + 2 * fibonacci(n - 1))


def z1_path_closed(n: int) -> int:
    if n < 0:
        raise ValueError("path order must be nonnegative")
    if n <= 2:
        return 0
    return sigma1_path_closed(n - 1)


def sigma1_cycle_closed(n: int) -> int:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return n * fibonacci(n - 2)


def z1_cycle_closed(n: int) -> int:
    """Equal to ``sigma1_cycle_closed`` because ``L(C_n)`` is ``C_n``."""
    return sigma1_cycle_closed(n)


def z1_star_closed(n: int) -> int:
    """``Z_1(K_{1,n-1})``: any two of the ``n-1`` edges."""
    if n < 3:
        raise ValueError("star formula needs n >= 3")
    return (n - 1) * (n - 2) // 2


def z1_broom3_closed(n: int) -> int:
    if n < 4:
        raise ValueError("broom formula needs n >= 4")
    return (n - 3) ** 2 + 1


# --- identity checks ---------------------------------------------------------------------


def check_lemma_rec(g: Graph, z: int, cap: int | None = None) -> bool:
    """Compare oracle ``Z_1(g)`` with the pivot recursion at ``z`` evaluated by
    oracles on every smaller graph."""
    lhs = zk_oracle(g, 1, cap)
    rhs = lemma_rec_terms(
        g, z, lambda h: zk_oracle(h, 1, cap), lambda h: zk_oracle(h, 0, cap)
    )
    return lhs == rhs


def z1_via_line_graph(g: Graph, cap: int | None = None) -> int:
    return sigma1_oracle(line_graph(g), cap)
