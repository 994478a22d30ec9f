"""Utter graphs and the co-2-plex / stable-set correspondence.

The utter graph u(G) has one node per vertex and one per edge of G.  Nodes
``0..n-1`` are the vertices, node ``n + e`` is edge ``e``.  Two nodes are
adjacent when the underlying elements are incident, adjacent, or adjacent by
contraction.  Writing ``C(uv) = N[u] | N[v]``, the three rules collapse to:

* vertex--vertex: adjacent in G;
* vertex ``w``--edge ``e``: ``w`` in ``C(e)``;
* edge ``e``--edge ``f``: some endpoint of ``f`` lies in ``C(e)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .co2plex import is_co2plex, vertex_edge_representation
from .errors import InstanceTooLarge, PreconditionError
from .graph import Graph, chordal_certificate, maximal_cliques

UTTER_CLIQUE_CAP = 60


@dataclass(frozen=True)
class UtterGraph:
    base: Graph
    graph: Graph

    @property
    def n_vertex_nodes(self) -> int:
        return self.base.n

    def is_vertex_node(self, node: int) -> bool:
        return node < self.base.n

    def vertex_node(self, v: int) -> int:
        return v

    def edge_node(self, e: int) -> int:
        return self.base.n + e

    def element(self, node: int) -> tuple[str, int]:
        """``('v', vertex)`` or ``('e', edge id)`` for a node of u(G)."""
        if node < self.base.n:
            return ("v", node)
        return ("e", node - self.base.n)

    def split(self, nodes: Iterable[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """Translate a node set into ``(W, F)``: base vertices and base edge ids."""
        n = self.base.n
        nodes = sorted(set(nodes))
        return tuple(v for v in nodes if v < n), tuple(v - n for v in nodes if v >= n)

    def join(self, vertices: Iterable[int], edge_ids: Iterable[int]) -> tuple[int, ...]:
        n = self.base.n
        return tuple(sorted(set(vertices) | {n + e for e in edge_ids}))


def build_utter(graph: Graph) -> UtterGraph:
    n = graph.n
    reach = []  # bitmask of C(e) over base vertices
    for u, v in graph.edges:
        reach.append(graph.masks[u] | graph.masks[v] | (1 << u) | (1 << v))
    edges = list(graph.edges)
    for e, mask in enumerate(reach):
        for w in range(n):
            if mask >> w & 1:
                edges.append((w, n + e))
    endpoint_mask = [(1 << u) | (1 << v) for u, v in graph.edges]
    for e in range(graph.m):
        for f in range(e + 1, graph.m):
            if reach[e] & endpoint_mask[f]:
                edges.append((n + e, n + f))
    return UtterGraph(graph, Graph(n + graph.m, edges))


# ---------------------------------------------------------------------------
# the bijection
# ---------------------------------------------------------------------------

def co2plex_to_stable(graph: Graph, vertices: Iterable[int], utter: UtterGraph | None = None) -> tuple[int, ...]:
    """Map a co-2-plex S to the stable set ``W | F`` of u(G)."""
    rep = vertex_edge_representation(graph, vertices)
    n = graph.n
    return tuple(sorted(rep.isolated + tuple(n + e for e in rep.matching)))


def stable_to_co2plex(utter: UtterGraph, nodes: Iterable[int]) -> tuple[int, ...]:
    """Map a stable set ``W | F`` of u(G) to the co-2-plex ``W | V(F)``."""
    nodes = tuple(sorted(set(nodes)))
    g = utter.graph
    for i, a in enumerate(nodes):
        for b in nodes[i + 1:]:
            if g.has_edge(a, b):
                raise PreconditionError(f"nodes {a} and {b} of u(G) are adjacent")
    w, f = utter.split(nodes)
    out = tuple(sorted(set(w) | set(utter.base.edge_vertices(f))))
    assert is_co2plex(utter.base, out)
    return out


# ---------------------------------------------------------------------------
# variable change between stable-set space (z, y) and co-2-plex space (x, y)
# ---------------------------------------------------------------------------

def phi(z: Sequence, y: Sequence, graph: Graph) -> tuple[tuple, tuple]:
    """``x_u = z_u + y(delta(u))``; y passes through."""
    _check_lengths(z, y, graph)
    x = tuple(z[u] + sum((y[e] for e in graph.incident_edges(u)), 0 * z[u]) for u in graph.vertices)
    return x, tuple(y)


def phi_inverse(x: Sequence, y: Sequence, graph: Graph) -> tuple[tuple, tuple]:
    """``z_u = x_u - y(delta(u))``; y passes through."""
    _check_lengths(x, y, graph)
    z = tuple(x[u] - sum((y[e] for e in graph.incident_edges(u)), 0 * x[u]) for u in graph.vertices)
    return z, tuple(y)


def _check_lengths(a, y, graph):
    if len(a) != graph.n or len(y) != graph.m:
        raise ValueError(f"expected vectors of length {graph.n} and {graph.m}")


# ---------------------------------------------------------------------------
# utter cliques
# ---------------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class UtterClique:
    vertices: tuple[int, ...]  # W
    edges: tuple[int, ...]  # F, edge ids

    def label(self) -> str:
        return f"utterclique_W{{{','.join(map(str, self.vertices))}}}_F{{{','.join(map(str, self.edges))}}}"


def is_utter_clique(graph: Graph, vertices: Iterable[int], edge_ids: Iterable[int],
                    utter: UtterGraph | None = None) -> bool:
    utter = utter or build_utter(graph)
    nodes = utter.join(vertices, edge_ids)
    g = utter.graph
    return all(g.has_edge(a, b) for i, a in enumerate(nodes) for b in nodes[i + 1:])


def is_maximal_utter_clique(graph: Graph, vertices, edge_ids, utter: UtterGraph | None = None) -> bool:
    utter = utter or build_utter(graph)
    nodes = set(utter.join(vertices, edge_ids))
    if not is_utter_clique(graph, vertices, edge_ids, utter):
        return False
    g = utter.graph
    return not any(all(g.has_edge(c, a) for a in nodes)
                   for c in range(g.n) if c not in nodes)


def enumerate_maximal_utter_cliques(graph: Graph, cap: int = UTTER_CLIQUE_CAP,
                                    utter: UtterGraph | None = None) -> list[UtterClique]:
    """Maximal cliques of u(G) as ``[W, F]`` pairs, sorted.

    Chordal graphs take the shortcut through the maximal cliques K of G, whose
    utter cliques are ``[K, E(K) | delta(K)]``.  Other graphs run clique
    enumeration on u(G) itself, limited to ``cap`` nodes.
    """
    if chordal_certificate(graph).chordal:
        out = []
        for k in maximal_cliques(graph):
            f = tuple(sorted(graph.edges_within(k) + graph.cut_edges(k)))
            out.append(UtterClique(k, f))
        return sorted(out)
    if graph.n + graph.m > cap:
        raise InstanceTooLarge(
            f"utter clique enumeration capped at {cap} nodes, u(G) has {graph.n + graph.m}")
    utter = utter or build_utter(graph)
    return sorted(UtterClique(*utter.split(c)) for c in maximal_cliques(utter.graph))


def greedy_utter_clique(utter: UtterGraph, weights: Sequence, extend: bool = True) -> UtterClique:
    """Greedy clique of u(G) by decreasing node weight, then made maximal.

    Ties in weight go to the smaller node index.  The maximal extension scans
    vertex nodes before edge nodes, each in index order.
    """
    g = utter.graph
    order = sorted(range(g.n), key=lambda v: (-weights[v], v))
    clique: list[int] = []
    cmask = 0
    masks = g.masks
    for v in order:
        if masks[v] & cmask == cmask:
            clique.append(v)
            cmask |= 1 << v
    if extend:
        for v in range(g.n):
            if not cmask >> v & 1 and masks[v] & cmask == cmask:
                clique.append(v)
                cmask |= 1 << v
    return UtterClique(*utter.split(clique))

