"""The four end-to-end algorithms and the cardinality preprocessing around them."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Sequence

from ..co2plex import Co2Plex, is_co2plex, vertex_edge_representation
from ..graph import Graph
from ..polyhedra.builders import build_E, build_Nk
from ..polyhedra.linear import LinearSystem
from ..separation import separate_2plex_greedy, separate_star_exact, separate_utterclique_greedy
from ..utter import build_utter
from .bnc import OPTIMAL, TIME_LIMIT, BnCConfig, SolveStats, branch_and_cut, relative_gap
from .grasp import grasp_co2plex
from .preprocess import decompose, preprocess_peel


class AlgorithmChoice(Enum):
    N2 = "n2"
    N2_2PLEX = "n2-2plex"
    E = "e"
    E_UTTERCLIQUE = "e-utter"

    @classmethod
    def parse(cls, text: str | "AlgorithmChoice") -> "AlgorithmChoice":
        if isinstance(text, cls):
            return text
        key = str(text).strip().lower().replace("_", "-")
        aliases = {"n2+2plex": "n2-2plex", "e+utter": "e-utter", "e-utterclique": "e-utter"}
        key = aliases.get(key, key)
        for choice in cls:
            if choice.value == key:
                return choice
        raise ValueError(f"unknown algorithm {text!r}; pick one of {[c.value for c in cls]}")


ALGORITHMS = tuple(AlgorithmChoice)


@dataclass
class SolverConfig:
    time_limit: float | None = None
    cut_rounds: int = 5
    threshold: float = 1e-6
    seed: int = 0
    grasp_alpha: float = 0.7
    preprocess: bool = True
    star_cuts: bool = False  # experimental: exact star cuts on top of the formulation
    arithmetic: str = "float"

    def bnc(self, time_limit: float | None) -> BnCConfig:
        return BnCConfig(time_limit=time_limit, cut_rounds=self.cut_rounds,
                         threshold=self.threshold, arithmetic=self.arithmetic)


@dataclass
class SolveResult:
    value: object
    co2plex: Co2Plex
    stats: SolveStats
    status: str
    subinstances: int = 0
    meta: dict = field(default_factory=dict)


def build_formulation(graph: Graph, algorithm: AlgorithmChoice) -> LinearSystem:
    if algorithm in (AlgorithmChoice.N2, AlgorithmChoice.N2_2PLEX):
        return build_Nk(graph, 2)
    return build_E(graph)


def make_separators(graph: Graph, algorithm: AlgorithmChoice, config: SolverConfig) -> list:
    n = graph.n
    thr = 0 if config.arithmetic == "rational" else config.threshold
    seps = []
    if algorithm == AlgorithmChoice.N2_2PLEX:
        seps.append(lambda p: [separate_2plex_greedy(graph, p[:n], thr)])
    elif algorithm == AlgorithmChoice.E_UTTERCLIQUE:
        utter = build_utter(graph)
        seps.append(lambda p: [separate_utterclique_greedy(graph, utter, p[:n], p[n:], thr)])
    if config.star_cuts:
        # star rows live in x-space; pad them into the extended space when needed
        from ..polyhedra.linear import LinearInequality

        space = build_formulation(graph, algorithm).space

        def stars(p):
            out = []
            for cut in separate_star_exact(graph, p[:n], thr):
                ineq = cut.inequality
                out.append(LinearInequality(space, ineq.coeffs, ineq.rhs, ineq.label))
            return out

        seps.append(stars)
    return seps


def objective_vector(system: LinearSystem, weights: Sequence) -> list:
    g = system.graph
    return list(weights) + [0] * (system.size - g.n)


def _weights(graph: Graph, weights) -> tuple[list[Fraction], bool]:
    if weights is None:
        return [Fraction(1)] * graph.n, True
    w = [Fraction(v) for v in weights]
    if len(w) != graph.n:
        raise ValueError(f"expected {graph.n} weights, got {len(w)}")
    return w, all(v == 1 for v in w)


def _co2plex_from_point(graph: Graph, x) -> Co2Plex:
    chosen = [v for v in graph.vertices if round(float(x[v])) == 1]
    return vertex_edge_representation(graph, chosen)


def solve_whole(graph: Graph, weights, algorithm: AlgorithmChoice, config: SolverConfig,
                incumbent: Co2Plex | None = None) -> SolveResult:
    """Branch-and-cut on the full instance, optionally seeded with a co-2-plex."""
    algorithm = AlgorithmChoice.parse(algorithm)
    w, _ = _weights(graph, weights)
    system = build_formulation(graph, algorithm)
    obj = objective_vector(system, w)
    seed = None
    if incumbent is not None:
        point = _point_for(system, incumbent.vertices)
        seed = (sum((w[v] for v in incumbent.vertices), Fraction(0)), point)
    res = branch_and_cut(system, obj, make_separators(graph, algorithm, config),
                         config.bnc(config.time_limit), incumbent=seed)
    best = _co2plex_from_point(graph, res.x) if res.x is not None else vertex_edge_representation(graph, ())
    value = sum((w[v] for v in best.vertices), Fraction(0))
    return SolveResult(value, best, res.stats, res.stats.status)


def _point_for(system: LinearSystem, vertices) -> tuple:
    g = system.graph
    s = set(vertices)
    x = [1 if v in s else 0 for v in g.vertices]
    if system.size > g.n:
        x += [1 if (a in s and b in s) else 0 for a, b in g.edges]
    return tuple(x)


def solve_max_co2plex(graph: Graph, weights=None, algorithm: AlgorithmChoice | str = AlgorithmChoice.N2,
                      config: SolverConfig | None = None) -> SolveResult:
    """Maximum-weight co-2-plex through one of the four formulations.

    Unit weights with ``config.preprocess`` run GRASP, then peeling, then one
    forced subinstance per surviving vertex; node and cut counts are summed
    over subinstances, the gap is the largest subinstance gap and the root LP
    value the largest root value.  Any other weights solve the whole instance
    seeded by GRASP.
    """
    config = config or SolverConfig()
    algorithm = AlgorithmChoice.parse(algorithm)
    start = time.perf_counter()
    w, unit = _weights(graph, weights)
    grasp = grasp_co2plex(graph, w, config.grasp_alpha, config.seed)
    if not (unit and config.preprocess):
        result = solve_whole(graph, w, algorithm, config, incumbent=grasp)
        result.stats.wall_time = time.perf_counter() - start
        result.meta["grasp_value"] = float(sum((w[v] for v in grasp.vertices), Fraction(0)))
        return result

    deadline = None if config.time_limit is None else start + config.time_limit
    best = grasp
    best_value = len(grasp.vertices)
    survivors = preprocess_peel(graph, best_value, 2)
    parts = decompose(graph, survivors)
    agg = SolveStats(nodes=0, cuts=0, gap=0.0)
    root_values = []
    status = OPTIMAL
    unsolved_bound = None
    for part in parts:
        remaining = None if deadline is None else deadline - time.perf_counter()
        if remaining is not None and remaining <= 0:
            status = TIME_LIMIT
            # nothing known about this part beyond its size
            unsolved_bound = max(unsolved_bound or 0, part.graph.n)
            continue
        system = build_formulation(part.graph, algorithm)
        obj = objective_vector(system, [1] * part.graph.n)
        seps = make_separators(part.graph, algorithm, config)
        res = branch_and_cut(system, obj, seps, config.bnc(remaining),
                             incumbent=(best_value, None), fixings={part.forced: (1, 1)})
        st = res.stats
        agg.nodes += st.nodes
        agg.cuts += st.cuts
        if st.root_lp_value is not None:
            root_values.append(st.root_lp_value)
        if st.status == TIME_LIMIT:
            status = TIME_LIMIT
        if res.x is not None and res.value > best_value:
            local = [v for v in part.graph.vertices if round(float(res.x[v])) == 1]
            chosen = [part.vertex_map[v] for v in local]
            assert is_co2plex(graph, chosen)
            best = vertex_edge_representation(graph, chosen)
            best_value = len(chosen)
        agg.gap = max(agg.gap, relative_gap(st.best_bound, best_value) if st.best_bound is not None else 0.0)
        if st.status == TIME_LIMIT and st.best_bound is None:
            agg.gap = math.inf
    if unsolved_bound is not None:
        agg.gap = max(agg.gap, relative_gap(unsolved_bound, best_value))
    agg.incumbent_value = best_value
    agg.root_lp_value = max(root_values) if root_values else None
    agg.root_lp_initial = None
    agg.root_gap = relative_gap(agg.root_lp_value, best_value) if agg.root_lp_value is not None else None
    if status == OPTIMAL:
        agg.gap = 0.0
        agg.best_bound = best_value
    else:
        agg.best_bound = best_value * (1 + agg.gap) if math.isfinite(agg.gap) else None
    agg.status = status
    agg.wall_time = time.perf_counter() - start
    return SolveResult(Fraction(best_value), best, agg, status, subinstances=len(parts),
                       meta={"grasp_value": len(grasp.vertices), "peeled": graph.n - len(survivors)})
