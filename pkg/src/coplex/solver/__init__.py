"""Branch-and-cut, GRASP, preprocessing and the four end-to-end algorithms."""

from .bnc import BnCConfig, BnCResult, SolveStats, branch_and_cut
from .grasp import grasp_co2plex
from .lp import HighsBackend, RationalBackend
from .pipeline import ALGORITHMS, AlgorithmChoice, SolveResult, SolverConfig, solve_max_co2plex, solve_whole
from .preprocess import Subinstance, decompose, preprocess_peel

__all__ = [
    "ALGORITHMS", "AlgorithmChoice", "BnCConfig", "BnCResult", "HighsBackend", "RationalBackend",
    "SolveResult", "SolveStats", "SolverConfig", "Subinstance", "branch_and_cut", "decompose",
    "grasp_co2plex", "preprocess_peel", "solve_max_co2plex", "solve_whole",
]
