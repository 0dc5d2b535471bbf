"""Labelled multigraphs, Cayley graphs and the Delta-Y transformation."""

from .cayley import cayley, delta_y, relator_triangles, tk_graph
from .core import LabeledGraph, from_edges
from .isomorphism import is_isomorphic, verify_isomorphism

__all__ = [
    "LabeledGraph", "cayley", "delta_y", "from_edges", "is_isomorphic",
    "relator_triangles", "tk_graph", "verify_isomorphism",
]
