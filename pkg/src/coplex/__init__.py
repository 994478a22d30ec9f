"""Exact solvers and a polyhedral verification lab for maximum weighted co-2-plexes."""

from .co2plex import Co2Plex, alpha2, brute_force_max_co2plex, enumerate_co2plexes, is_co2plex
from .errors import CoplexError, GraphParseError, InstanceTooLarge, LPError, PreconditionError
from .graph import Graph, generate_er, parse_dimacs_col, parse_metis, read_graph
from .utter import UtterClique, UtterGraph, build_utter

__version__ = "0.1.0"

__all__ = [
    "Co2Plex", "CoplexError", "Graph", "GraphParseError", "InstanceTooLarge", "LPError",
    "PreconditionError", "UtterClique", "UtterGraph", "alpha2", "brute_force_max_co2plex",
    "build_utter", "enumerate_co2plexes", "generate_er", "is_co2plex", "parse_dimacs_col",
    "parse_metis", "read_graph",
]
