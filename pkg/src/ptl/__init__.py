"""Planar Turán toolkit for the family {K4, Theta5}."""

from __future__ import annotations

from .graph import Graph, canonical_form, enumerate_graphs, parse_graph6, write_graph6
from .kernels import IMPL as KERNELS

__version__ = "0.1.0"

__all__ = [
    "Graph",
    "KERNELS",
    "__version__",
    "canonical_form",
    "enumerate_graphs",
    "parse_graph6",
    "write_graph6",
]
