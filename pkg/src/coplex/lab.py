"""Named property suites that certify the polyhedral results at desk scale.

Every suite takes ``(n_max, count, seed)``, draws its instances from
``random.Random(seed)`` and returns a JSON-ready verdict.  A failure entry
names the instance so it can be replayed.
"""

from __future__ import annotations

import random
import time
from fractions import Fraction
from itertools import combinations
from typing import Callable

from .co2plex import count_co2plexes, count_stable_sets, enumerate_2plexes, is_maximal_2plex
from .graph import (
    Graph, cycle_graph, generate_er, hole_length, is_connected, is_contraction_perfect_bruteforce,
    is_perfect_bruteforce, is_tree, random_chordal, random_tree, true_twin_pairs,
)
from .polyhedra import (
    EXTENDED, build_chordal_extended, build_clique_extended, build_T, build_utter_clique_system,
    characpolytope_witness, enumerate_vertices, fractional_vertices, generalized_star_inequality,
    hole_inequality, incidence_points, is_extreme_point, is_facet, is_integer_polytope, lift_facet,
    star_facet_conditions, two_plex_inequality,
)
from .polyhedra.builders import add_apex
from .utter import build_utter

LAB_SCHEMA = "coplex.lab/1"
MAX_FAILURES = 20
T_ROW_CAP = 150
UTTER_PERFECT_CAP = 40


class _Tally:
    def __init__(self, check: str, params: dict):
        self.check = check
        self.params = params
        self.cases = 0
        self.failures: list[str] = []
        self.notes: dict = {}
        self.start = time.perf_counter()

    def expect(self, ok: bool, what: str) -> None:
        self.cases += 1
        if not ok and len(self.failures) < MAX_FAILURES:
            self.failures.append(what)
        elif not ok:
            self.notes["truncated_failures"] = self.notes.get("truncated_failures", 0) + 1

    def verdict(self) -> dict:
        return {
            "schema": LAB_SCHEMA,
            "check": self.check,
            "passed": not self.failures,
            "cases": self.cases,
            "failures": self.failures,
            "params": self.params,
            "notes": self.notes,
            "elapsed": round(time.perf_counter() - self.start, 3),
        }


def _describe(graph: Graph) -> str:
    return f"n={graph.n} edges={list(graph.edges)}"


def _all_graphs(n: int):
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph(n, [pairs[i] for i in range(len(pairs)) if mask >> i & 1])


def _random_graph(rng: random.Random, n_min: int, n_max: int, densities=(0.3, 0.5, 0.7)) -> Graph:
    return generate_er(rng.randint(n_min, n_max), rng.choice(densities), rng.randrange(2**31))


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------

def check_bijection(n_max: int = 7, count: int = 500, seed: int = 0) -> dict:
    """Co-2-plex count of G equals the stable-set count of u(G).

    Every labelled graph on at most ``min(n_max, 5)`` vertices, then ``count``
    random graphs split over the orders 6..n_max.
    """
    t = _Tally("bijection", {"n_max": n_max, "count": count, "seed": seed, "exhaustive_up_to": min(n_max, 5)})
    for n in range(0, min(n_max, 5) + 1):
        for g in _all_graphs(n):
            t.expect(count_co2plexes(g) == count_stable_sets(build_utter(g).graph), _describe(g))
    if n_max >= 6:
        rng = random.Random(seed)
        for _ in range(count):
            g = _random_graph(rng, 6, n_max)
            t.expect(count_co2plexes(g) == count_stable_sets(build_utter(g).graph), _describe(g))
    return t.verdict()


def check_tree_polytope(n_max: int = 8, count: int = 50, seed: int = 0) -> dict:
    """Vertices of the star system of a tree are exactly its co-2-plex vectors."""
    t = _Tally("tree-polytope", {"n_max": n_max, "count": count, "seed": seed})
    rng = random.Random(seed)
    for _ in range(count):
        g = random_tree(rng.randint(1, n_max), rng.randrange(2**31))
        verts = enumerate_vertices(build_T(g))
        expected = sorted(tuple(map(int, p)) for p in incidence_points(g))
        t.expect(sorted(tuple(map(int, v)) for v in verts) == expected
                 and all(v.denominator == 1 for p in verts for v in p), _describe(g))
    return t.verdict()


def _charac_candidate(g: Graph) -> bool:
    if not is_connected(g) or is_tree(g) or true_twin_pairs(g):
        return False
    length = hole_length(g)
    return length is None or length % 3 != 0


def check_charac_integrality(n_max: int = 8, count: int = 50, seed: int = 0) -> dict:
    """Star system integrality versus the tree / 3k-hole structure.

    Random connected, true-twin-free graphs that are neither trees nor holes of
    length divisible by 3 must have a fractional vertex.  Draws whose star
    system exceeds ``T_ROW_CAP`` rows are redrawn to keep enumeration cheap.
    Holes of length 6, 9 and 12 (when within ``n_max``) must be integral, and
    the hole-plus-pendant witness must be a fractional extreme point.
    """
    t = _Tally("charac-integrality", {"n_max": n_max, "count": count, "seed": seed, "row_cap": T_ROW_CAP})
    rng = random.Random(seed)
    drawn = redrawn = 0
    while drawn < count:
        g = _random_graph(rng, 4, n_max, (0.3, 0.4, 0.5))
        if not _charac_candidate(g):
            continue
        system = build_T(g)
        if len(system.rows) > T_ROW_CAP:
            redrawn += 1
            continue
        drawn += 1
        t.expect(bool(fractional_vertices(system)), "no fractional vertex: " + _describe(g))
    t.notes["redrawn_over_row_cap"] = redrawn
    for p in range(6, max(n_max, 6) + 1, 3):
        g = cycle_graph(p)
        t.expect(is_integer_polytope(build_T(g)), f"C{p} star system not integral")
        pend = add_apex(g, [0])
        x = characpolytope_witness(pend)
        t.expect(is_extreme_point(build_T(pend), x) and any(v.denominator != 1 for v in x),
                 f"C{p}+pendant witness {x} not a fractional vertex")
    return t.verdict()


def check_chordal_extended(n_max: int = 7, count: int = 50, seed: int = 0) -> dict:
    """The compact clique system of a chordal graph has exactly the extended co-2-plex vectors as vertices."""
    t = _Tally("chordal-extended", {"n_max": n_max, "count": count, "seed": seed})
    rng = random.Random(seed)
    for _ in range(count):
        g = random_chordal(rng.randint(1, n_max), rng.randrange(2**31), rng.choice((0.3, 0.5, 0.8)))
        verts = enumerate_vertices(build_chordal_extended(g))
        expected = sorted(incidence_points(g, EXTENDED))
        t.expect(all(v.denominator == 1 for p in verts for v in p)
                 and sorted(tuple(map(int, v)) for v in verts) == expected, _describe(g))
    _c4_cases(t)
    return t.verdict()


def _c4_cases(t: _Tally) -> None:
    # vertices 0..3 play u, v, w, z around the cycle; the half edge is zw
    g = cycle_graph(4)
    half = Fraction(1, 2)
    y = [half if g.edges[e] == (2, 3) else Fraction(0) for e in range(g.m)]
    point = (half,) * 4 + tuple(y)
    system = build_clique_extended(g)
    t.expect(is_extreme_point(system, point), f"C4 point {point} not extreme in the clique system")


def check_c4_witness(n_max: int = 4, count: int = 1, seed: int = 0) -> dict:
    """The half point with one half-valued edge variable is a vertex of the clique system of C4."""
    t = _Tally("c4-witness", {})
    _c4_cases(t)
    return t.verdict()


def check_hole_rank(n_max: int = 12, count: int = 0, seed: int = 0) -> dict:
    """``x(V) <= floor(2n/3)`` is a facet of the hole polytope exactly when 3 does not divide n."""
    t = _Tally("hole-rank", {"n_max": n_max})
    for p in range(5, n_max + 1):
        g = cycle_graph(p)
        t.expect(is_facet(g, hole_inequality(g)) == (p % 3 != 0), f"C{p}")
    return t.verdict()


def check_facet_2plex(n_max: int = 8, count: int = 50, seed: int = 0) -> dict:
    """``x(K) <= 2`` is a facet exactly for maximal 2-plexes, over every 2-plex with at least 3 vertices."""
    t = _Tally("facet-2plex", {"n_max": n_max, "count": count, "seed": seed, "min_size": 3})
    rng = random.Random(seed)
    for _ in range(count):
        g = _random_graph(rng, 3, n_max)
        for k in enumerate_2plexes(g, min_size=3):
            t.expect(is_facet(g, two_plex_inequality(g, k)) == is_maximal_2plex(g, k),
                     f"K={k} in {_describe(g)}")
    return t.verdict()


def check_facet_star(n_max: int = 9, count: int = 30, seed: int = 0, max_subset: int = 4) -> dict:
    """The structural conditions agree with the facet test for every generalised star row."""
    t = _Tally("facet-star", {"n_max": n_max, "count": count, "seed": seed, "max_subset": max_subset})
    rng = random.Random(seed)
    for _ in range(count):
        g = _random_graph(rng, 3, n_max)
        for w in g.vertices:
            nbrs = g.neighbors(w)
            for size in range(1, min(max_subset, len(nbrs)) + 1):
                for sub in combinations(nbrs, size):
                    ineq = generalized_star_inequality(g, w, sub)
                    t.expect(star_facet_conditions(g, w, sub) == is_facet(g, ineq),
                             f"w={w} W={sub} in {_describe(g)}")
    return t.verdict()


def _facets_to_lift(g: Graph):
    for k in enumerate_2plexes(g, min_size=3):
        if is_maximal_2plex(g, k):
            yield two_plex_inequality(g, k)
    for w in g.vertices:
        nbrs = g.neighbors(w)
        for size in range(2, min(3, len(nbrs)) + 1):
            for sub in combinations(nbrs, size):
                if star_facet_conditions(g, w, sub):
                    yield generalized_star_inequality(g, w, sub)


def check_lifting(n_max: int = 7, count: int = 30, seed: int = 0) -> dict:
    """Lifting a facet of P(G) through a new vertex joined to its support yields a facet.

    Instances come from random graphs on at most ``n_max - 1`` vertices; one
    facet (maximal 2-plex or generalised star row) is picked per graph and
    certified before lifting.
    """
    t = _Tally("lifting", {"n_max": n_max, "count": count, "seed": seed})
    rng = random.Random(seed)
    made = 0
    while made < count:
        g = _random_graph(rng, 3, n_max - 1)
        options = list(_facets_to_lift(g))
        if not options:
            continue
        ineq = rng.choice(options)
        if not is_facet(g, ineq):
            continue
        lifted_graph = add_apex(g, ineq.support())
        lifted = lift_facet(lifted_graph, ineq, g.n)
        made += 1
        t.expect(is_facet(lifted_graph, lifted), f"{ineq.label} lifted in {_describe(lifted_graph)}")
    return t.verdict()


def check_contraction_perfect(n_max: int = 7, count: int = 100, seed: int = 0) -> dict:
    """Three routes agree: integrality of the utter-clique system, contraction-perfectness, perfectness of u(G)."""
    t = _Tally("contraction-perfect", {"n_max": n_max, "count": count, "seed": seed})
    rng = random.Random(seed)
    positives = 0
    # holes of length 5..7 are fixed negatives (C6 contracts to C5)
    fixed = [cycle_graph(p) for p in range(5, min(n_max, 7) + 1)]
    for g in fixed + [_random_graph(rng, 1, n_max) for _ in range(count)]:
        cp = is_contraction_perfect_bruteforce(g)
        integral = is_integer_polytope(build_utter_clique_system(g))
        utter = build_utter(g).graph
        perfect = is_perfect_bruteforce(utter, cap=UTTER_PERFECT_CAP)
        positives += cp
        t.expect(cp == integral == perfect, f"cp={cp} integral={integral} perfect_u={perfect} {_describe(g)}")
    t.notes["contraction_perfect"] = positives
    return t.verdict()


SUITES: dict[str, Callable[..., dict]] = {
    "bijection": check_bijection,
    "tree-polytope": check_tree_polytope,
    "charac-integrality": check_charac_integrality,
    "chordal-extended": check_chordal_extended,
    "c4-witness": check_c4_witness,
    "hole-rank": check_hole_rank,
    "facet-2plex": check_facet_2plex,
    "facet-star": check_facet_star,
    "lifting": check_lifting,
    "contraction-perfect": check_contraction_perfect,
}


def run_suite(name: str, **kwargs) -> dict:
    """Run a suite by name; ``kwargs`` left as None fall back to the suite defaults."""
    try:
        suite = SUITES[name]
    except KeyError:
        raise ValueError(f"unknown check {name!r}; available: {', '.join(SUITES)}") from None
    return suite(**{k: v for k, v in kwargs.items() if v is not None})
