"""Exact counts of nearly independent edge subsets (``Z_k``) of graphs, free
tree enumeration, and exhaustive checks of extremal results for ``Z_1``."""

from .graph import (
    CanonicalTreeCode,
    Graph,
    canonical_tree_code,
    line_graph,
    parse_graph6,
    to_graph6,
)
from .invariants import (
    sigma1_oracle,
    z0,
    z1,
    z1_recursive,
    z1_tree_dp,
    zk_oracle,
)
from .trees import FamilySpec, enumerate_free_trees, make_family

__version__ = "0.1.0"

__all__ = [
    "CanonicalTreeCode",
    "FamilySpec",
    "Graph",
    "canonical_tree_code",
    "enumerate_free_trees",
    "line_graph",
    "make_family",
    "parse_graph6",
    "sigma1_oracle",
    "to_graph6",
    "z0",
    "z1",
    "z1_recursive",
    "z1_tree_dp",
    "zk_oracle",
]
