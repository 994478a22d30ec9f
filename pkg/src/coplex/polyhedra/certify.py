"""Validity, facet, and membership certificates checked against exhaustive enumeration.

Every decision here is exact: points are integer incidence vectors and all
rank computations run over Fractions.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from ..co2plex import ENUMERATION_CAP, co2plex_masks, alpha2_induced
from ..errors import InstanceTooLarge, PreconditionError
from ..graph import Graph, induced_subgraph, iter_holes
from .builders import star_inequality
from .exact import affine_rank
from .linear import EXTENDED, NATURAL, LinearInequality
from .rational_lp import is_feasible_exact


@lru_cache(maxsize=256)
def _incidence_points(graph: Graph, space: str) -> tuple[tuple[int, ...], ...]:
    n = graph.n
    out = []
    for s in co2plex_masks(graph):
        x = tuple((s >> v) & 1 for v in range(n))
        if space == EXTENDED:
            x += tuple(1 if (s >> u) & 1 and (s >> v) & 1 else 0 for u, v in graph.edges)
        out.append(x)
    return tuple(sorted(out))


def incidence_points(graph: Graph, space: str = NATURAL, cap: int = ENUMERATION_CAP) -> tuple[tuple[int, ...], ...]:
    """All (natural or extended) co-2-plex incidence vectors, sorted."""
    if graph.n > cap:
        raise InstanceTooLarge(f"co-2-plex enumeration capped at {cap} vertices, got {graph.n}")
    if space not in (NATURAL, EXTENDED):
        raise ValueError(f"unknown space {space!r}")
    return _incidence_points(graph, space)


def polytope_dimension(points: Sequence[Sequence]) -> int:
    return affine_rank(list(points))


@lru_cache(maxsize=256)
def _dimension(graph: Graph, space: str) -> int:
    return polytope_dimension(_incidence_points(graph, space))


def co2plex_polytope_dimension(graph: Graph, space: str = NATURAL, cap: int = ENUMERATION_CAP) -> int:
    incidence_points(graph, space, cap)
    return _dimension(graph, space)


def _check_space(graph: Graph, ineq: LinearInequality):
    size = graph.n if ineq.space == NATURAL else graph.n + graph.m
    if ineq.coeffs and max(ineq.coeffs) >= size:
        raise ValueError(f"{ineq.label or 'inequality'} uses a variable outside the {ineq.space} space")


def is_valid_inequality(graph: Graph, ineq: LinearInequality, cap: int = ENUMERATION_CAP) -> bool:
    _check_space(graph, ineq)
    return all(ineq.is_satisfied(p) for p in incidence_points(graph, ineq.space, cap))


def is_facet(graph: Graph, ineq: LinearInequality, cap: int = ENUMERATION_CAP) -> bool:
    """Facet test by the affine rank of the tight incidence vectors.

    Raises when the inequality is not valid, since facetness is undefined then.
    """
    if not is_valid_inequality(graph, ineq, cap):
        raise PreconditionError(f"{ineq.label or 'inequality'} is not valid for the co-2-plex polytope")
    dim = co2plex_polytope_dimension(graph, ineq.space, cap)
    tight = [p for p in incidence_points(graph, ineq.space, cap) if ineq.is_tight(p)]
    return affine_rank(tight, stop_at=dim - 1) == dim - 1


def star_facet_conditions(graph: Graph, w: int, subset: Iterable[int], cap: int = ENUMERATION_CAP) -> bool:
    """The two structural conditions under which the generalised star row is a facet.

    i) no vertex outside ``W + w`` is complete to W;
    ii) every ``v`` in ``N(w) - W`` raises alpha2 by one when added to W.

    A singleton W gives the row ``x_u <= 1``, which is always a facet, so it
    short-circuits to True.
    """
    sub = tuple(sorted(set(subset)))
    if not sub:
        raise PreconditionError("W must be nonempty")
    nbrs = graph.neighbor_set(w)
    if any(v not in nbrs for v in sub):
        raise PreconditionError(f"W must lie in the neighbourhood of {w}")
    if len(sub) == 1:
        return True
    inside = set(sub) | {w}
    wmask = graph.mask_of(sub)
    masks = graph.masks
    if any(masks[u] & wmask == wmask for u in graph.vertices if u not in inside):
        return False
    base = alpha2_induced(graph, sub, cap)
    return all(alpha2_induced(graph, sub + (v,), cap) == base + 1
               for v in sorted(nbrs) if v not in inside)


# ---------------------------------------------------------------------------
# fractional witness for graphs that are not trees or 3k-holes
# ---------------------------------------------------------------------------

def _holes_with_pendant(graph: Graph):
    seen = set()
    for hole in iter_holes(graph):
        if len(hole) % 3 or frozenset(hole) in seen:
            continue
        seen.add(frozenset(hole))
        hmask = graph.mask_of(hole)
        for u in graph.vertices:
            if hmask >> u & 1:
                continue
            hit = graph.masks[u] & hmask
            if hit and hit & (hit - 1) == 0:
                yield hole, u, hit.bit_length() - 1


def characpolytope_witness(graph: Graph, hole: Sequence[int] | None = None,
                           pendant: int | None = None) -> tuple[Fraction, ...]:
    """Fractional extreme point of the star polytope from a 3k-hole and a pendant.

    The hole is rotated so that the pendant's attachment vertex comes first:
    ``v_0 = a, v_1, ..., v_{p-1}``.  The point sets ``x_u = 1``,
    ``x_{v_i} = 1`` for ``i mod 3 == 0`` with ``i > 0``, ``1/2`` on the other
    hole vertices (``v_0`` included) and 0 elsewhere.  The star rows at every
    hole vertex with both hole neighbours, the row at ``v_0`` with
    ``W = {u, v_1, v_{p-1}}`` and the upper bounds at the 1-entries pin it down.
    """
    if hole is None or pendant is None:
        found = next(iter(_holes_with_pendant(graph)), None)
        if found is None:
            raise PreconditionError("no hole of length divisible by 3 with a vertex meeting it exactly once")
        hole, pendant, attach = found
    else:
        hole = tuple(hole)
        sub, _ = induced_subgraph(graph, hole)
        if sub.n < 4 or any(sub.degree(v) != 2 for v in sub.vertices) or len(hole) % 3:
            raise PreconditionError(f"{hole} is not a hole of length divisible by 3")
        if any(not graph.has_edge(hole[i], hole[(i + 1) % len(hole)]) for i in range(len(hole))):
            raise PreconditionError(f"{hole} is not listed in cyclic order")
        touching = [v for v in hole if graph.has_edge(pendant, v)]
        if pendant in hole or len(touching) != 1:
            raise PreconditionError(f"vertex {pendant} must meet the hole in exactly one vertex")
        attach = touching[0]
    k = hole.index(attach)
    order = hole[k:] + hole[:k]
    half = Fraction(1, 2)
    x = [Fraction(0)] * graph.n
    x[pendant] = Fraction(1)
    for i, v in enumerate(order):
        x[v] = Fraction(1) if i and i % 3 == 0 else half
    return tuple(x)


# ---------------------------------------------------------------------------
# membership through the edge extension
# ---------------------------------------------------------------------------

def membership_via_extension(graph: Graph, x: Sequence) -> bool:
    """Is there a y with ``(x, y)`` in the LP relaxation of the edge formulation?

    Solved as an exact feasibility LP over y alone:
    ``y(delta(v)) <= x_v``, ``y_uv >= x_u + x_v - 1``, ``0 <= y <= 1``.
    """
    x = [Fraction(v) for v in x]
    if len(x) != graph.n:
        raise ValueError(f"expected {graph.n} coordinates, got {len(x)}")
    if any(v < 0 or v > 1 for v in x):
        return False
    m = graph.m
    if m == 0:
        return True
    rows, rhs = [], []
    for v in graph.vertices:
        row = [0] * m
        for e in graph.incident_edges(v):
            row[e] = 1
        rows.append(row)
        rhs.append(x[v])
    for e, (u, v) in enumerate(graph.edges):
        row = [0] * m
        row[e] = -1
        rows.append(row)
        rhs.append(1 - x[u] - x[v])
    return is_feasible_exact(rows, rhs, [0] * m, [1] * m)


def star_rows_satisfied(graph: Graph, x: Sequence) -> bool:
    """Direct check of every star row plus the box, by full enumeration of W."""
    from itertools import combinations

    x = [Fraction(v) for v in x]
    if any(v < 0 or v > 1 for v in x):
        return False
    for w in graph.vertices:
        nbrs = graph.neighbors(w)
        for size in range(1, len(nbrs) + 1):
            for sub in combinations(nbrs, size):
                if not star_inequality(graph, w, sub).is_satisfied(x):
                    return False
    return True
