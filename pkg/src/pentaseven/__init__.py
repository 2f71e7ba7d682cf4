"""Structure toolkit for (2P3,C4,C6)-free graphs containing a 7-hole or T0:
recognition with certified partitions, exact coloring, and width-12
clique-width expressions, all cross-checked against brute-force oracles."""

__version__ = "0.1.0"

from .core import Graph, build_graph  # noqa: F401
