"""Co-2-plex semantics and the exhaustive oracles every other module is checked against.

A co-2-plex is a vertex set inducing a subgraph of maximum degree at most one;
its vertex-edge representation ``(W, F)`` splits it into isolated vertices and
matched edges.  2-plexes are the complements: every member misses at most one
other member.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from .errors import InstanceTooLarge, PreconditionError
from .graph import Graph, induced_subgraph

ORACLE_CAP = 30
ENUMERATION_CAP = 20


class Co2Plex(NamedTuple):
    vertices: tuple[int, ...]
    isolated: tuple[int, ...]  # W
    matching: tuple[int, ...]  # F, edge ids


def is_co2plex(graph: Graph, vertices: Iterable[int]) -> bool:
    s = graph.mask_of(vertices)
    masks = graph.masks
    rest = s
    while rest:
        low = rest & -rest
        v = low.bit_length() - 1
        rest ^= low
        if (masks[v] & s).bit_count() > 1:
            return False
    return True


def is_2plex(graph: Graph, vertices: Iterable[int]) -> bool:
    """Every member is non-adjacent to at most one other member."""
    vs = set(vertices)
    k = graph.mask_of(vs)
    masks = graph.masks
    return all(len(vs) - 1 - (masks[v] & k).bit_count() <= 1 for v in vs)


def vertex_edge_representation(graph: Graph, vertices: Iterable[int]) -> Co2Plex:
    s = tuple(sorted(set(vertices)))
    if not is_co2plex(graph, s):
        raise PreconditionError(f"{s} is not a co-2-plex")
    matching = graph.edges_within(s)
    covered = set(graph.edge_vertices(matching))
    return Co2Plex(s, tuple(v for v in s if v not in covered), matching)


def incidence_vector(graph: Graph, vertices: Iterable[int]) -> tuple[int, ...]:
    s = set(vertices)
    return tuple(1 if v in s else 0 for v in graph.vertices)


def extended_incidence_vector(graph: Graph, vertices: Iterable[int]) -> tuple[int, ...]:
    """``(chi^S, zeta^{E(S)})`` laid out as x over V followed by y over E."""
    s = set(vertices)
    x = [1 if v in s else 0 for v in graph.vertices]
    y = [1 if (u in s and v in s) else 0 for u, v in graph.edges]
    return tuple(x + y)


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------

def _bits(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


def co2plex_masks(graph: Graph) -> list[int]:
    masks = graph.masks
    n = graph.n
    found: list[int] = []

    def rec(v: int, s: int):
        if v == n:
            found.append(s)
            return
        rec(v + 1, s)
        inside = masks[v] & s
        if inside.bit_count() > 1:
            return
        if inside:
            u = inside.bit_length() - 1
            if (masks[u] & s).bit_count() > 0:
                return
        rec(v + 1, s | (1 << v))

    rec(0, 0)
    return found


def enumerate_co2plexes(graph: Graph, cap: int = ENUMERATION_CAP) -> list[tuple[int, ...]]:
    """Every co-2-plex (empty set included) once, in lexicographic tuple order."""
    if graph.n > cap:
        raise InstanceTooLarge(f"co-2-plex enumeration capped at {cap} vertices, got {graph.n}")
    return sorted(_bits(s) for s in co2plex_masks(graph))


def enumerate_co2plex_records(graph: Graph, cap: int = ENUMERATION_CAP) -> list[Co2Plex]:
    return [vertex_edge_representation(graph, s) for s in enumerate_co2plexes(graph, cap)]


def count_co2plexes(graph: Graph, cap: int = ENUMERATION_CAP) -> int:
    if graph.n > cap:
        raise InstanceTooLarge(f"co-2-plex enumeration capped at {cap} vertices, got {graph.n}")
    return len(co2plex_masks(graph))


def _stable_masks(graph: Graph) -> list[int]:
    masks = graph.masks
    n = graph.n
    found: list[int] = []

    def rec(v: int, s: int, blocked: int):
        if v == n:
            found.append(s)
            return
        rec(v + 1, s, blocked)
        if not blocked >> v & 1:
            rec(v + 1, s | (1 << v), blocked | masks[v])

    rec(0, 0, 0)
    return found


def enumerate_stable_sets(graph: Graph, cap: int = 40) -> list[tuple[int, ...]]:
    if graph.n > cap:
        raise InstanceTooLarge(f"stable set enumeration capped at {cap} vertices, got {graph.n}")
    return sorted(_bits(s) for s in _stable_masks(graph))


def count_stable_sets(graph: Graph, cap: int = 40) -> int:
    """Count stable sets (empty set included) with a memoised split on the lowest vertex."""
    if graph.n > cap:
        raise InstanceTooLarge(f"stable set counting capped at {cap} vertices, got {graph.n}")
    masks = graph.masks
    memo: dict[int, int] = {}

    def count(avail: int) -> int:
        if not avail:
            return 1
        hit = memo.get(avail)
        if hit is not None:
            return hit
        low = avail & -avail
        v = low.bit_length() - 1
        rest = avail ^ low
        total = count(rest) + count(rest & ~masks[v])
        memo[avail] = total
        return total

    return count((1 << graph.n) - 1)


def enumerate_2plexes(graph: Graph, min_size: int = 0, cap: int = ENUMERATION_CAP) -> list[tuple[int, ...]]:
    """2-plexes of G, i.e. co-2-plexes of the complement."""
    from .graph import complement

    return [k for k in enumerate_co2plexes(complement(graph), cap) if len(k) >= min_size]


def is_maximal_2plex(graph: Graph, vertices: Sequence[int]) -> bool:
    vs = set(vertices)
    if not is_2plex(graph, vs):
        return False
    return not any(is_2plex(graph, vs | {u}) for u in graph.vertices if u not in vs)


def maximal_2plexes(graph: Graph, min_size: int = 0, cap: int = ENUMERATION_CAP) -> list[tuple[int, ...]]:
    return [k for k in enumerate_2plexes(graph, min_size, cap) if is_maximal_2plex(graph, k)]


# ---------------------------------------------------------------------------
# optimisation oracles
# ---------------------------------------------------------------------------

def _as_fractions(graph: Graph, weights) -> list[Fraction]:
    if weights is None:
        return [Fraction(1)] * graph.n
    w = [Fraction(x) for x in weights]
    if len(w) != graph.n:
        raise ValueError(f"expected {graph.n} weights, got {len(w)}")
    return w


def brute_force_max_co2plex(graph: Graph, weights=None, cap: int = ORACLE_CAP) -> tuple[Fraction, Co2Plex]:
    """Maximum-weight co-2-plex by include/exclude branch-and-bound.

    Vertices of non-positive weight are never selected.  Among optimal sets the
    lexicographically smallest sorted tuple is returned: with positive weights
    only, the include-first search meets optima in that order, so the first one
    found is kept and ties are pruned.
    """
    if graph.n > cap:
        raise InstanceTooLarge(f"co-2-plex oracle capped at {cap} vertices, got {graph.n}")
    w = _as_fractions(graph, weights)
    n = graph.n
    masks = graph.masks
    useful = [v for v in range(n) if w[v] > 0]
    best_value = Fraction(0)
    best_set = 0

    def addable(v: int, s: int) -> bool:
        inside = masks[v] & s
        if inside.bit_count() > 1:
            return False
        if inside:
            u = inside.bit_length() - 1
            return (masks[u] & s).bit_count() == 0
        return True

    def rec(i: int, s: int, value: Fraction):
        nonlocal best_value, best_set
        if i == len(useful):
            if value > best_value:
                best_value, best_set = value, s
            return
        bound = value
        for j in range(i, len(useful)):
            if addable(useful[j], s):
                bound += w[useful[j]]
        if bound <= best_value:
            return
        v = useful[i]
        if addable(v, s):
            rec(i + 1, s | (1 << v), value + w[v])
        rec(i + 1, s, value)

    rec(0, 0, Fraction(0))
    return best_value, vertex_edge_representation(graph, _bits(best_set))


def brute_force_max_stable_set(graph: Graph, weights=None, cap: int = ORACLE_CAP) -> tuple[Fraction, tuple[int, ...]]:
    if graph.n > cap:
        raise InstanceTooLarge(f"stable set oracle capped at {cap} vertices, got {graph.n}")
    w = _as_fractions(graph, weights)
    masks = graph.masks
    useful = [v for v in range(graph.n) if w[v] > 0]
    best = [Fraction(0), 0]

    def rec(i: int, s: int, blocked: int, value: Fraction):
        if i == len(useful):
            if value > best[0]:
                best[0], best[1] = value, s
            return
        bound = value + sum((w[useful[j]] for j in range(i, len(useful))
                             if not blocked >> useful[j] & 1), Fraction(0))
        if bound <= best[0]:
            return
        v = useful[i]
        if not blocked >> v & 1:
            rec(i + 1, s | (1 << v), blocked | masks[v] | (1 << v), value + w[v])
        rec(i + 1, s, blocked, value)

    rec(0, 0, 0, Fraction(0))
    return best[0], _bits(best[1])


def alpha2(graph: Graph, cap: int = ORACLE_CAP) -> int:
    """Size of a largest co-2-plex."""
    value, _ = brute_force_max_co2plex(graph, None, cap)
    return int(value)


def alpha2_induced(graph: Graph, vertices: Iterable[int], cap: int = ORACLE_CAP) -> int:
    sub, _ = induced_subgraph(graph, vertices)
    return alpha2(sub, cap)
