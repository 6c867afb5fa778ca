"""Property suites: inequality lemmas, edge/vertex monotonicity and the
exact identities tying the invariants together.

Every suite is deterministic for a given seed and returns a
:class:`~nearlyz.extremal.VerificationResult`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations

from .extremal import THEOREM_MIN_ORDER, VerificationResult, random_forest, random_tree
from .graph import (
    Graph,
    add_edge,
    component_vertex_sets,
    cycle_graph,
    delete_vertices,
    disjoint_union,
    has_p3,
    line_graph,
    path_graph,
    to_graph6,
)
from .invariants import (
    lemma_rec_terms,
    sigma1_cycle_closed,
    sigma1_oracle,
    sigma1_path_closed,
    z0,
    z0_path_closed,
    z0_tree_dp,
    z1_cycle_closed,
    z1_path_closed,
    z1_recursive,
    z1_tree_dp,
    zk_spectrum,
)
from .trees import (
    attach_branches,
    branches_at,
    enumerate_free_trees,
    is_end_rooted_path,
    rooted_path,
    star_like,
)


def random_graph(rng: random.Random, max_n: int = 8, max_m: int = 12) -> Graph:
    n = rng.randint(1, max_n)
    pairs = list(combinations(range(n), 2))
    m = rng.randint(0, min(max_m, len(pairs)))
    return Graph(n, frozenset(rng.sample(pairs, m)))


class SpectrumCache:
    """Per-run memo of oracle spectra keyed by graph6."""

    def __init__(self):
        self._memo: dict[str, list[int]] = {}

    def spectrum(self, g: Graph) -> list[int]:
        key = to_graph6(g)
        if key not in self._memo:
            self._memo[key] = zk_spectrum(g)
        return self._memo[key]

    def z(self, g: Graph, k: int) -> int:
        s = self.spectrum(g)
        return s[k] if k < len(s) else 0


# --- path lemmas ----------------------------------------------------------------------


def _path_lemmas(result: VerificationResult, n_max: int) -> None:
    Z0, Z1 = z0_path_closed, z1_path_closed
    for n in range(0, n_max + 1):
        checks = [("Z0(P_n) >= n", Z0(n) >= n)]
        if n >= 4:
            checks.append(("Z0(P_n) >= n+1", Z0(n) >= n + 1))
        if n >= 3:
            checks.append(("Z1(P_n) >= n-2", Z1(n) >= n - 2))
        if n >= 7:
            lhs = Z1(n - 3) + Z0(n - 4) + Z0(n - 3)
            checks.append(("pendant-pair bound", lhs <= Z1(n - 2) + Z0(n - 3)))
            lhs = Z1(n - 4) + Z0(n - 5) + 2 * Z0(n - 4)
            checks.append(("pendant-triple bound", lhs <= Z1(n - 2) + Z0(n - 3)))
        for d in range(5, n):
            lhs = (d - 1) * Z0(n - d) + Z1(n - d)
            checks.append((f"high-degree bound d={d}", lhs <= Z0(n - 3) + Z1(n - 2)))
        for name, ok in checks:
            result.checked += 1
            if not ok:
                result.fail(path_graph(min(n, 62)), reason=name, n=n)


# --- tree lemmas -------------------------------------------------------------------


def _ironing(result: VerificationResult, n_max: int, invariant: str,
             assert_from: int) -> None:
    value = z0_tree_dp if invariant == "Z0" else z1_tree_dp
    below = 0
    for n in range(2, n_max + 1):
        for g in enumerate_free_trees(n):
            for v in range(n):
                branches = branches_at(g, v)
                for i, br in enumerate(branches):
                    if is_end_rooted_path(br):
                        continue
                    rest = branches[:i] + branches[i + 1:]
                    ironed = attach_branches([rooted_path(br.graph.n)] + rest).graph
                    before, after = value(g), value(ironed)
                    if before < after:
                        result.checked += 1
                        continue
                    if n < assert_from:
                        below += 1
                        continue
                    result.checked += 1
                    result.fail(g, reason=f"{invariant} ironing", root=v,
                                branch_order=br.graph.n, before=before, after=after,
                                ironed=to_graph6(ironed))
    if below:
        result.notes.append(
            f"{invariant} ironing: {below} non-strict instances below order {assert_from} (not asserted)"
        )


def _partitions(total: int, largest: int | None = None):
    largest = total if largest is None else largest
    if total == 0:
        yield ()
        return
    for p in range(min(total, largest), 0, -1):
        for rest in _partitions(total - p, p):
            yield (p,) + rest


def _merge_branches(result: VerificationResult, n_max: int, assert_from: int) -> None:
    below = 0
    for n in range(4, n_max + 1):
        for arms in _partitions(n - 1):
            if len(arms) < 3:
                continue
            merged = (arms[0] + arms[1],) + arms[2:]
            before = z1_tree_dp(star_like(arms))
            after = z1_tree_dp(star_like(merged))
            if before < after:
                result.checked += 1
            elif n < assert_from:
                below += 1
            else:
                result.checked += 1
                result.fail(star_like(arms), reason="branch merge", arms=list(arms),
                            before=before, after=after)
    if below:
        result.notes.append(
            f"branch merge: {below} non-strict instances below order {assert_from} (not asserted)"
        )


def _z0_path_max(result: VerificationResult, n_max: int, rng: random.Random,
                 forests: int) -> None:
    for n in range(1, n_max + 1):
        bound = z0_path_closed(n)
        graphs = list(enumerate_free_trees(n)) + [random_forest(n, rng) for _ in range(forests)]
        for g in graphs:
            result.checked += 1
            if z0_tree_dp(g) > bound:
                result.fail(g, reason="Z0 above path", n=n, value=z0_tree_dp(g), path=bound)


@dataclass
class LemmaConfig:
    path_n_max: int = 200
    z0_path_max_n: int = 10
    ironing_n_max: int = 12
    merge_n_max: int = 12
    assert_from: int = THEOREM_MIN_ORDER
    forests_per_n: int = 20
    seed: int = 0


def verify_lemma_inequalities(config: LemmaConfig | None = None) -> dict[str, VerificationResult]:
    """Each inequality family checked separately; keys name the family."""
    cfg = config or LemmaConfig()
    rng = random.Random(cfg.seed)
    out = {}
    res = VerificationResult("path-lemmas", f"n<={cfg.path_n_max}")
    _path_lemmas(res, cfg.path_n_max)
    out["path"] = res
    res = VerificationResult("z0-path-max", f"n<={cfg.z0_path_max_n}")
    _z0_path_max(res, cfg.z0_path_max_n, rng, cfg.forests_per_n)
    out["z0_path_max"] = res
    res = VerificationResult("z0-ironing", f"n<={cfg.ironing_n_max}")
    _ironing(res, cfg.ironing_n_max, "Z0", assert_from=2)
    out["z0_ironing"] = res
    res = VerificationResult("z1-ironing", f"{cfg.assert_from}<=n<={cfg.ironing_n_max}")
    _ironing(res, cfg.ironing_n_max, "Z1", assert_from=cfg.assert_from)
    out["z1_ironing"] = res
    res = VerificationResult("branch-merge", f"{cfg.assert_from}<=n<={cfg.merge_n_max}")
    _merge_branches(res, cfg.merge_n_max, cfg.assert_from)
    out["branch_merge"] = res
    return out


# --- monotonicity ----------------------------------------------------------------------


def monotonicity_suite(seed: int = 0, trials: int = 500) -> VerificationResult:
    """Edge addition never lowers ``Z_1`` (strictly raising it exactly when the
    new edge can join a 1-nearly independent set); vertex deletion behaves as
    its degree dictates."""
    rng = random.Random(seed)
    result = VerificationResult("monotonicity", f"seed={seed} trials={trials}")
    cache = SpectrumCache()
    for _ in range(trials):
        g = random_graph(rng, max_n=8, max_m=11)
        base = cache.z(g, 1)
        non_edges = [p for p in combinations(range(g.n), 2) if p not in g.edges]
        if non_edges:
            u, v = rng.choice(non_edges)
            h = add_edge(g, u, v)
            grown = cache.z(h, 1)
            strict = has_p3(delete_vertices(g, [u, v])) or bool(g.adjacency[u]) or bool(g.adjacency[v])
            result.checked += 1
            if grown < base or (grown > base) != strict:
                result.fail(g, reason="edge addition", edge=[u, v], before=base,
                            after=grown, strict_expected=strict)
        if g.n:
            v = rng.randrange(g.n)
            smaller = cache.z(delete_vertices(g, [v]), 1)
            deg = len(g.adjacency[v])
            result.checked += 1
            if deg == 0:
                ok = smaller == base
            elif deg >= 2:
                ok = base > smaller
            else:
                (w,) = g.adjacency[v]
                if len(g.adjacency[w]) >= 2:
                    ok = base > smaller
                else:
                    rest = has_p3(delete_vertices(g, [v, w]))
                    ok = base >= smaller and (base > smaller) == rest
            if not ok:
                result.fail(g, reason="vertex deletion", vertex=v, degree=deg,
                            before=base, after=smaller)
    return result


# --- identities --------------------------------------------------------------------------


def identity_corpus(seed: int, n_max: int = 8, random_graphs: int = 200,
                    max_m: int = 12) -> list[Graph]:
    rng = random.Random(seed)
    corpus = [g for n in range(1, n_max + 1) for g in enumerate_free_trees(n)]
    corpus += [random_graph(rng, max_n=8, max_m=max_m) for _ in range(random_graphs)]
    return corpus


def identity_suite(seed: int = 0, corpus: list[Graph] | None = None,
                   forests: int = 100) -> dict[str, VerificationResult]:
    """Pivot recursion at every vertex, the line-graph identity, the partition
    identity and ``Z_0``/``Z_1`` agreement, all against brute force."""
    corpus = identity_corpus(seed) if corpus is None else corpus
    cache = SpectrumCache()
    rec = VerificationResult("pivot-recursion", f"{len(corpus)} graphs")
    lg = VerificationResult("line-graph", f"{len(corpus)} graphs")
    part = VerificationResult("partition", f"{len(corpus)} graphs")
    agree = VerificationResult("method-agreement", f"{len(corpus)} graphs")
    for g in corpus:
        spec = cache.spectrum(g)
        z1_brute = spec[1] if len(spec) > 1 else 0
        for z in range(g.n):
            rec.checked += 1
            rhs = lemma_rec_terms(g, z, lambda h: cache.z(h, 1), lambda h: cache.z(h, 0))
            if rhs != z1_brute:
                rec.fail(g, vertex=z, oracle=z1_brute, recursion=rhs)
        lg.checked += 1
        via_lg = sigma1_oracle(line_graph(g))
        if via_lg != z1_brute:
            lg.fail(g, oracle=z1_brute, sigma1_of_line_graph=via_lg)
        part.checked += 1
        if sum(spec) != 2 ** g.m:
            part.fail(g, total=sum(spec), expected=2 ** g.m)
        agree.checked += 1
        values = {"z0": z0(g), "z1_recursive": z1_recursive(g)}
        if g.m == g.n - _components(g):
            values["z1_tree_dp"] = z1_tree_dp(g)
        if values["z0"] != spec[0] or any(
            v != z1_brute for k, v in values.items() if k != "z0"
        ):
            agree.fail(g, oracle=spec[:2], **values)
    mult = _multiplicativity(seed, forests)
    return {"pivot_recursion": rec, "line_graph": lg, "partition": part,
            "agreement": agree, "multiplicativity": mult}


def _components(g: Graph) -> int:
    return len(component_vertex_sets(g))


def _multiplicativity(seed: int, count: int) -> VerificationResult:
    rng = random.Random(seed + 1)
    result = VerificationResult("z0-multiplicative", f"{count} forests")
    for _ in range(count):
        parts = [random_tree(rng.randint(1, 7), rng) for _ in range(rng.randint(2, 4))]
        f = disjoint_union(*parts)
        prod = 1
        for t in parts:
            prod *= z0(t)
        result.checked += 1
        if z0(f) != prod or (f.m <= 16 and zk_spectrum(f)[0] != prod):
            result.fail(f, z0=z0(f), product=prod)
    return result


def closed_form_suite(path_n_max: int = 20, cycle_n_max: int = 12,
                      exact_div_n_max: int = 500) -> VerificationResult:
    """Closed forms against brute force on paths and cycles."""
    result = VerificationResult("closed-forms", f"paths<={path_n_max} cycles<={cycle_n_max}")
    for n in range(0, path_n_max + 1):
        p = path_graph(n)
        spec = zk_spectrum(p)
        z1_brute = spec[1] if len(spec) > 1 else 0
        result.checked += 1
        if z0_path_closed(n) != spec[0] or z1_path_closed(n) != z1_brute:
            result.fail(p, n=n, oracle=spec[:2],
                        closed=[z0_path_closed(n), z1_path_closed(n)])
        if n <= 20:
            result.checked += 1
            if sigma1_path_closed(n) != sigma1_oracle(p):
                result.fail(p, n=n, sigma1=sigma1_oracle(p), closed=sigma1_path_closed(n))
    for n in range(3, cycle_n_max + 1):
        c = cycle_graph(n)
        spec = zk_spectrum(c)
        result.checked += 1
        if z1_cycle_closed(n) != spec[1] or sigma1_cycle_closed(n) != sigma1_oracle(c):
            result.fail(c, n=n, z1=spec[1], sigma1=sigma1_oracle(c),
                        closed=z1_cycle_closed(n))
    for n in range(0, exact_div_n_max + 1):
        # raises on an inexact division by 5
        sigma1_path_closed(n)
        z1_path_closed(n)
        result.checked += 1
    return result
