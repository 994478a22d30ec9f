"""Cut generation: exact star separation and greedy 2-plex / utter-clique heuristics."""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import NamedTuple, Sequence

from .co2plex import is_2plex
from .errors import InstanceTooLarge
from .graph import Graph
from .polyhedra.builders import STAR_DEGREE_CAP, star_inequality, two_plex_inequality, utter_clique_inequality
from .polyhedra.linear import LinearInequality
from .utter import UtterGraph, build_utter, greedy_utter_clique, phi_inverse

STAR = "star"
TWOPLEX = "twoplex"
UTTERCLIQUE = "utterclique"
DEFAULT_THRESHOLD = 1e-6


class Cut(NamedTuple):
    inequality: LinearInequality
    violation: object
    tag: str


def _sorted(cuts: list[Cut]) -> list[Cut]:
    return sorted(cuts, key=lambda c: (-c.violation, c.inequality.label))


def separate_star_exact(graph: Graph, x: Sequence, threshold=0) -> list[Cut]:
    """One most violated star cut per vertex, when it beats ``threshold``.

    For a fixed centre ``w`` the violation of ``(w, W)`` is
    ``sum_{v in W} (x_v + x_w - 1) - x_w``, so taking exactly the neighbours
    with ``x_v + x_w > 1`` is optimal.
    """
    cuts = []
    for w in graph.vertices:
        xw = x[w]
        chosen = [v for v in graph.neighbors(w) if xw + x[v] > 1]
        if not chosen:
            continue
        violation = sum(x[v] + xw - 1 for v in chosen) - xw
        if violation > threshold:
            cuts.append(Cut(star_inequality(graph, w, chosen), violation, STAR))
    return _sorted(cuts)


def separate_star_bruteforce(graph: Graph, x: Sequence, degree_cap: int = STAR_DEGREE_CAP) -> Cut | None:
    """Most violated star cut over every ``(w, W)``; None when nothing is violated.

    Works in exact arithmetic: the point is scaled to integers by the common
    denominator, and subsets of each neighbourhood are walked in Gray-code
    order so every step adds or drops a single term.  Ties keep the first
    pair met (smallest ``w``, then Gray order).
    """
    top = max((graph.degree(v) for v in graph.vertices), default=0)
    if top > degree_cap:
        raise InstanceTooLarge(f"star brute force capped at degree {degree_cap}, got {top}")
    xf = [Fraction(v) for v in x]
    scale = lcm(*(v.denominator for v in xf)) if xf else 1
    xi = [int(v * scale) for v in xf]
    best = None  # (scaled violation, w, mask)
    for w in graph.vertices:
        nbrs = graph.neighbors(w)
        gain = [xi[v] + xi[w] - scale for v in nbrs]
        total = 0
        mask = 0
        for step in range(1, 1 << len(nbrs)):
            bit = (step & -step).bit_length() - 1
            mask ^= 1 << bit
            total += gain[bit] if mask >> bit & 1 else -gain[bit]
            value = total - xi[w]
            if best is None or value > best[0]:
                best = (value, w, mask)
    if best is None or best[0] <= 0:
        return None
    value, w, mask = best
    nbrs = graph.neighbors(w)
    chosen = [nbrs[i] for i in range(len(nbrs)) if mask >> i & 1]
    return Cut(star_inequality(graph, w, chosen), Fraction(value, scale), STAR)


def greedy_clique(graph: Graph, weights: Sequence) -> list[int]:
    """Scan vertices by decreasing weight (ties by index), keeping those adjacent to all kept."""
    masks = graph.masks
    clique, cmask = [], 0
    for v in sorted(graph.vertices, key=lambda v: (-weights[v], v)):
        if masks[v] & cmask == cmask:
            clique.append(v)
            cmask |= 1 << v
    return clique


def greedy_2plex(graph: Graph, x: Sequence) -> list[int]:
    """Greedy clique by decreasing ``x``, grown into a 2-plex by decreasing residual degree."""
    clique = greedy_clique(graph, x)
    inside = set(clique)
    rest = [v for v in graph.vertices if v not in inside]
    rest_mask = graph.mask_of(rest)
    degree = {v: (graph.masks[v] & rest_mask).bit_count() for v in rest}
    members = list(clique)
    for v in sorted(rest, key=lambda v: (-degree[v], v)):
        if is_2plex(graph, members + [v]):
            members.append(v)
    return sorted(members)


def separate_2plex_greedy(graph: Graph, x: Sequence, threshold=DEFAULT_THRESHOLD) -> Cut | None:
    if graph.n == 0:
        return None
    members = greedy_2plex(graph, x)
    ineq = two_plex_inequality(graph, members)
    violation = ineq.violation(x)
    if violation > threshold:
        return Cut(ineq, violation, TWOPLEX)
    return None


def separate_utterclique_greedy(graph: Graph, utter: UtterGraph | None, x: Sequence, y: Sequence,
                                threshold=DEFAULT_THRESHOLD) -> Cut | None:
    """Greedy maximal clique of u(G) weighted by ``phi^-1(x, y)``, emitted as an utter-clique row."""
    if graph.n == 0:
        return None
    utter = utter or build_utter(graph)
    z, y = phi_inverse(x, y, graph)
    clique = greedy_utter_clique(utter, list(z) + list(y))
    ineq = utter_clique_inequality(graph, clique.vertices, clique.edges)
    violation = ineq.violation(list(x) + list(y))
    if violation > threshold:
        return Cut(ineq, violation, UTTERCLIQUE)
    return None
