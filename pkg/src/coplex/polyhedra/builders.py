"""Formulation builders and named inequality families for co-2-plex polytopes."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from ..co2plex import alpha2_induced, is_2plex, maximal_2plexes
from ..errors import InstanceTooLarge, PreconditionError
from ..graph import Graph, chordal_certificate, hole_length, induced_subgraph, maximal_cliques
from ..utter import UTTER_CLIQUE_CAP, UtterClique, enumerate_maximal_utter_cliques
from .linear import EXTENDED, NATURAL, LinearInequality, LinearSystem, format_set

STAR_DEGREE_CAP = 16


# ---------------------------------------------------------------------------
# rows shared by the extended systems
# ---------------------------------------------------------------------------

def delta_row(graph: Graph, v: int) -> LinearInequality:
    """``y(delta(v)) - x_v <= 0``."""
    terms = [(graph.n + e, 1) for e in graph.incident_edges(v)] + [(v, -1)]
    return LinearInequality.from_terms(EXTENDED, terms, 0, f"delta_v{v}")


def edge_row(graph: Graph, e: int) -> LinearInequality:
    """``x_u + x_v - y_uv <= 1``."""
    u, v = graph.edge(e)
    return LinearInequality(EXTENDED, {u: 1, v: 1, graph.n + e: -1}, 1, f"edge_{u}_{v}")


def clique_row(graph: Graph, clique: Sequence[int]) -> LinearInequality:
    """``x(K) - y(E(K)) <= 1``."""
    terms = [(v, 1) for v in clique] + [(graph.n + e, -1) for e in graph.edges_within(clique)]
    return LinearInequality.from_terms(EXTENDED, terms, 1, f"clique_K{format_set(sorted(clique))}")


def utter_clique_inequality(graph: Graph, vertices: Iterable[int], edge_ids: Iterable[int]) -> LinearInequality:
    """``x(W) + y(F & E(V - W)) - y(E(W)) <= 1`` for an utter clique ``[W, F]``."""
    w = tuple(sorted(set(vertices)))
    f = tuple(sorted(set(edge_ids)))
    wset = set(w)
    terms = [(v, 1) for v in w]
    for e in f:
        a, b = graph.edge(e)
        if a not in wset and b not in wset:
            terms.append((graph.n + e, 1))
    terms += [(graph.n + e, -1) for e in graph.edges_within(w)]
    return LinearInequality.from_terms(EXTENDED, terms, 1, UtterClique(w, f).label())


def _extended_system(graph: Graph, name: str) -> LinearSystem:
    return LinearSystem(graph, EXTENDED, name=name)


# ---------------------------------------------------------------------------
# formulations
# ---------------------------------------------------------------------------

def build_Nk(graph: Graph, k: int = 2) -> LinearSystem:
    """``x(N(u)) + (|N(u)| - k + 1) x_u <= |N(u)|`` for every u with ``|N(u)| >= k``."""
    if k < 1:
        raise ValueError("k must be at least 1")
    system = LinearSystem(graph, NATURAL, name=f"N{k}")
    for u in graph.vertices:
        d = graph.degree(u)
        if d < k:
            continue
        terms = [(v, 1) for v in graph.neighbors(u)] + [(u, d - k + 1)]
        system.add(LinearInequality.from_terms(NATURAL, terms, d, f"nk_u{u}"))
    return system


def build_E(graph: Graph) -> LinearSystem:
    system = _extended_system(graph, "E")
    system.extend(delta_row(graph, v) for v in graph.vertices)
    system.extend(edge_row(graph, e) for e in range(graph.m))
    return system


def build_clique_extended(graph: Graph) -> LinearSystem:
    """Maximal-clique rows plus delta rows, for any graph.

    Only chordal graphs are guaranteed an integral polytope; the C4 witness
    uses this builder to show what goes wrong otherwise.
    """
    system = _extended_system(graph, "clique-extended")
    system.extend(clique_row(graph, k) for k in maximal_cliques(graph))
    system.extend(delta_row(graph, v) for v in graph.vertices)
    return system


def build_chordal_extended(graph: Graph) -> LinearSystem:
    cert = chordal_certificate(graph)
    if not cert.chordal:
        raise PreconditionError(f"graph is not chordal, hole {cert.hole}")
    system = build_clique_extended(graph)
    system.name = "chordal-extended"
    return system


def build_utter_clique_system(graph: Graph, cap: int = UTTER_CLIQUE_CAP) -> LinearSystem:
    system = _extended_system(graph, "utter-clique")
    for clique in enumerate_maximal_utter_cliques(graph, cap):
        system.add(utter_clique_inequality(graph, clique.vertices, clique.edges))
    system.extend(delta_row(graph, v) for v in graph.vertices)
    return system


def star_inequality(graph: Graph, w: int, subset: Iterable[int]) -> LinearInequality:
    """``x(W) + (|W| - 1) x_w <= |W|`` for nonempty ``W`` inside ``N(w)``."""
    sub = tuple(sorted(set(subset)))
    if not sub:
        raise PreconditionError("star inequalities need a nonempty W")
    nbrs = graph.neighbor_set(w)
    stray = [v for v in sub if v not in nbrs]
    if stray:
        raise PreconditionError(f"vertices {stray} are not neighbours of {w}")
    terms = [(v, 1) for v in sub] + [(w, len(sub) - 1)]
    return LinearInequality.from_terms(NATURAL, terms, len(sub), f"star_w{w}_W{format_set(sub)}")


def generalized_star_inequality(graph: Graph, w: int, subset: Iterable[int]) -> LinearInequality:
    """``x(W) + (alpha2(G[W]) - 1) x_w <= alpha2(G[W])`` for ``W`` inside ``N(w)``."""
    sub = tuple(sorted(set(subset)))
    if not sub:
        raise PreconditionError("W must be nonempty")
    nbrs = graph.neighbor_set(w)
    if any(v not in nbrs for v in sub):
        raise PreconditionError(f"W must lie in the neighbourhood of {w}")
    a = alpha2_induced(graph, sub)
    terms = [(v, 1) for v in sub] + [(w, a - 1)]
    return LinearInequality.from_terms(NATURAL, terms, a, f"gstar_w{w}_W{format_set(sub)}")


def build_T(graph: Graph, degree_cap: int = STAR_DEGREE_CAP) -> LinearSystem:
    """Every star inequality plus the box."""
    top = max((graph.degree(v) for v in graph.vertices), default=0)
    if top > degree_cap:
        raise InstanceTooLarge(f"explicit star system capped at degree {degree_cap}, got {top}")
    system = LinearSystem(graph, NATURAL, name="T")
    for w in graph.vertices:
        nbrs = graph.neighbors(w)
        for size in range(1, len(nbrs) + 1):
            for sub in combinations(nbrs, size):
                system.add(star_inequality(graph, w, sub))
    return system


def build_two_plex_system(graph: Graph) -> LinearSystem:
    """``x(K) <= 2`` for every maximal 2-plex with at least 3 vertices, plus the box.

    Smaller or non-maximal 2-plexes give rows implied by these and the box.
    """
    system = LinearSystem(graph, NATURAL, name="two-plex")
    system.extend(two_plex_inequality(graph, k) for k in maximal_2plexes(graph, min_size=3))
    return system


def two_plex_inequality(graph: Graph, vertices: Iterable[int]) -> LinearInequality:
    k = tuple(sorted(set(vertices)))
    if not is_2plex(graph, k):
        raise PreconditionError(f"{k} is not a 2-plex")
    return LinearInequality.from_terms(NATURAL, [(v, 1) for v in k], 2, f"twoplex_K{format_set(k)}")


def hole_inequality(graph: Graph, vertices: Iterable[int] | None = None) -> LinearInequality:
    """``x(H) <= floor(2|H| / 3)`` for an induced hole H (the whole graph by default).

    Lengths divisible by 3 still yield a valid row; its label ends in
    ``_nonfacet`` because such rows are sums of 2-plex rows.
    """
    h = tuple(range(graph.n)) if vertices is None else tuple(sorted(set(vertices)))
    sub, _ = induced_subgraph(graph, h)
    length = hole_length(sub)
    if length is None:
        raise PreconditionError(f"{h} does not induce a hole")
    label = f"hole_V{format_set(h)}" + ("_nonfacet" if length % 3 == 0 else "")
    return LinearInequality.from_terms(NATURAL, [(v, 1) for v in h], (2 * length) // 3, label)


def lift_facet(graph: Graph, ineq: LinearInequality, w: int, check: bool = True) -> LinearInequality:
    """Lift a facet of P(G - w) to P(G), where ``N(w)`` is exactly the support.

    The new coefficient of ``x_w`` is ``rhs - max`` over the support
    coefficients.  With ``check`` the input is first certified as a facet of
    ``P(G - w)``.
    """
    if ineq.space != NATURAL:
        raise PreconditionError("lifting applies to natural-space inequalities")
    support = set(ineq.support())
    if not support:
        raise PreconditionError("the inequality has empty support")
    if w in support:
        raise PreconditionError(f"vertex {w} already carries a coefficient")
    nbrs = graph.neighbor_set(w)
    if nbrs != support:
        extra = sorted(nbrs - support)
        missing = sorted(support - nbrs)
        raise PreconditionError(f"{w} must be adjacent exactly to the support; extra {extra}, missing {missing}")
    top = max(ineq.coeffs[v] for v in support)
    if top < 0:
        raise PreconditionError("lifting needs a positive coefficient in the support")
    if check:
        from .certify import is_facet

        rest = [v for v in graph.vertices if v != w]
        base, vmap = induced_subgraph(graph, rest)
        back = {old: new for new, old in enumerate(vmap)}
        local = LinearInequality(NATURAL, {back[v]: c for v, c in ineq.coeffs.items()}, ineq.rhs, ineq.label)
        if not is_facet(base, local):
            raise PreconditionError(f"{ineq.label or 'inequality'} is not facet-defining without {w}")
    coeffs = dict(ineq.coeffs)
    coeffs[w] = ineq.rhs - top
    return LinearInequality(NATURAL, coeffs, ineq.rhs, f"lift_w{w}_" + (ineq.label or "row"))


def add_apex(graph: Graph, attach: Iterable[int]) -> Graph:
    """Append a new vertex adjacent to ``attach``; it gets index ``graph.n``."""
    w = graph.n
    return Graph(w + 1, list(graph.edges) + [(v, w) for v in sorted(set(attach))])


def natural_bound_rows(graph: Graph) -> list[LinearInequality]:
    out = []
    for v in graph.vertices:
        out.append(LinearInequality(NATURAL, {v: 1}, 1, f"ub_{v}"))
        out.append(LinearInequality(NATURAL, {v: -1}, 0, f"lb_{v}"))
    return out


def fraction_vector(values) -> tuple[Fraction, ...]:
    return tuple(Fraction(v) for v in values)
