"""turan-forge: pattern generators, host cleanup, rich collections and
shifting embedders for dense-graph substructure search."""

from .errors import InputError, IntegrityError, ResourceError
from .graphs import Graph, build_graph, read_edge_list, write_edge_list, two_coloring
from .generators import PatternSpec, pattern, polarity_graph, random_graph

__version__ = "0.1.0"

__all__ = [
    "InputError", "IntegrityError", "ResourceError",
    "Graph", "build_graph", "read_edge_list", "write_edge_list", "two_coloring",
    "PatternSpec", "pattern", "polarity_graph", "random_graph",
    "__version__",
]
