"""Exact computations for Turán-type problems on distance-k graphs."""

from distk.canon import CanonicalForm, automorphism_orbits, canonical_form, is_isomorphic
from distk.graph import (
    UNREACHABLE,
    DistanceMatrix,
    Graph,
    GraphError,
    all_pairs_distances,
    clique_number,
    complement,
    distance_k_graph,
    edge_count,
    is_bipartite,
    is_connected,
    is_triangle_free,
)
from distk.graph6 import Graph6Error, emit_graph6, parse_graph6

__version__ = "0.1.0"

__all__ = [
    "UNREACHABLE",
    "CanonicalForm",
    "DistanceMatrix",
    "Graph",
    "Graph6Error",
    "GraphError",
    "all_pairs_distances",
    "automorphism_orbits",
    "canonical_form",
    "clique_number",
    "complement",
    "distance_k_graph",
    "edge_count",
    "emit_graph6",
    "is_bipartite",
    "is_connected",
    "is_isomorphic",
    "is_triangle_free",
    "parse_graph6",
]
