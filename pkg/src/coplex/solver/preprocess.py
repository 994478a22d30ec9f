"""Cardinality-only reductions: degree peeling and distance-2 decomposition."""

from __future__ import annotations

from typing import NamedTuple, Sequence

from ..graph import Graph, bounded_distance_set, complement, induced_subgraph


def preprocess_peel(graph: Graph, incumbent_size: int, k: int = 2) -> tuple[int, ...]:
    """Drop vertices that lie in no co-k-plex of size ``incumbent_size`` or more.

    A vertex with ``deg_{G[W]}(v) >= |W| - b + k`` fits in a co-k-plex of at
    most ``b - 1`` vertices of ``G[W]``, so it is removed; sweeps repeat until
    nothing changes.  Every co-k-plex of size at least ``b`` survives.
    """
    alive = (1 << graph.n) - 1
    masks = graph.masks
    while True:
        size = alive.bit_count()
        limit = size - incumbent_size + k
        drop = 0
        rest = alive
        while rest:
            low = rest & -rest
            v = low.bit_length() - 1
            rest ^= low
            if (masks[v] & alive).bit_count() >= limit:
                drop |= low
        if not drop:
            break
        alive &= ~drop
    return tuple(v for v in graph.vertices if alive >> v & 1)


class Subinstance(NamedTuple):
    graph: Graph
    forced: int  # local index of the vertex fixed to 1
    vertex_map: tuple[int, ...]  # local -> original vertex


def decompose(graph: Graph, vertices: Sequence[int]) -> list[Subinstance]:
    """One subinstance per ``v_i`` in ``W`` (ascending), restricted to ``v_i, ..., v_last``.

    Subinstance ``i`` is ``G[{v_i, ...} & D2(v_i)]`` with ``v_i`` forced, where
    ``D2(v)`` is the distance-2 ball around ``v`` in the complement of
    ``G[W]``.  Any co-2-plex of size 3 or more lies inside the ball of its
    smallest vertex; smaller ones must be covered by an incumbent.
    """
    order = sorted(set(vertices))
    sub, vmap = induced_subgraph(graph, order)
    comp = complement(sub)
    out = []
    for i in range(len(order)):
        ball = [j for j in bounded_distance_set(comp, i, 2) if j >= i]
        local, lmap = induced_subgraph(sub, ball)
        out.append(Subinstance(local, lmap.index(i), tuple(vmap[j] for j in lmap)))
    return out
