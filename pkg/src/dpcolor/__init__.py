"""Equitable DP-coloring: exact oracle, constructive algorithms, cover search."""

from .cover import Cover
from .errors import DPColorError
from .graph import Graph
from .oracle import Mode, check_coloring, count_colorings, solve

__all__ = ["Cover", "DPColorError", "Graph", "Mode", "check_coloring", "count_colorings", "solve"]
__version__ = "0.1.0"
