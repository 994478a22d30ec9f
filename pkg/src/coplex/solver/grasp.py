"""Single-start GRASP for a heavy co-2-plex: randomised greedy build, one local-search pass."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from ..co2plex import Co2Plex, vertex_edge_representation
from ..graph import Graph


def _addable(masks: Sequence[int], s: int, v: int) -> bool:
    inside = masks[v] & s
    if inside.bit_count() > 1:
        return False
    if inside:
        u = inside.bit_length() - 1
        return not masks[u] & s
    return True


def _members(s: int) -> list[int]:
    out = []
    while s:
        low = s & -s
        out.append(low.bit_length() - 1)
        s ^= low
    return out


def _complete(masks, weights, s: int, n: int) -> int:
    """Add positive-weight vertices, heaviest first (ties by index), until maximal."""
    for v in sorted(range(n), key=lambda v: (-weights[v], v)):
        if weights[v] > 0 and not s >> v & 1 and _addable(masks, s, v):
            s |= 1 << v
    return s


def _local_search(masks, weights, s: int, n: int) -> int:
    """One pass over the members: try 2-in/1-out, then 1-in/1-out, first improvement."""
    for u in _members(s):
        if not s >> u & 1:
            continue
        base = s & ~(1 << u)
        outside = [v for v in range(n) if not base >> v & 1 and v != u and weights[v] > 0
                   and _addable(masks, base, v)]
        moved = False
        for a, b in combinations(outside, 2):
            if weights[a] + weights[b] > weights[u]:
                t = base | (1 << a)
                if _addable(masks, t, b):
                    s = t | (1 << b)
                    moved = True
                    break
        if moved:
            continue
        for v in outside:
            if weights[v] > weights[u]:
                s = base | (1 << v)
                break
    return s


def grasp_co2plex(graph: Graph, weights=None, alpha: float = 0.7, seed: int = 0) -> Co2Plex:
    """Greedy randomised construction, then one improving pass, then completion.

    The greedy score of a candidate is its weight.  Candidates are vertices of
    positive weight that keep the set a co-2-plex; the restricted list keeps
    those scoring at least ``min + alpha * (max - min)`` and one is drawn
    uniformly.
    """
    if not 0 <= alpha <= 1:
        raise ValueError("alpha must lie in [0, 1]")
    n = graph.n
    w = [Fraction(1)] * n if weights is None else [Fraction(v) for v in weights]
    masks = graph.masks
    rng = random.Random(seed)
    s = 0
    while True:
        cand = [v for v in range(n) if w[v] > 0 and not s >> v & 1 and _addable(masks, s, v)]
        if not cand:
            break
        lo = min(w[v] for v in cand)
        hi = max(w[v] for v in cand)
        cut = lo + Fraction(alpha).limit_denominator(10 ** 6) * (hi - lo)
        rcl = [v for v in cand if w[v] >= cut]
        s |= 1 << rng.choice(rcl)
    s = _local_search(masks, w, s, n)
    s = _complete(masks, w, s, n)
    return vertex_edge_representation(graph, _members(s))
