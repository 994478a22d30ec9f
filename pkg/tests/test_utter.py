import random
from fractions import Fraction
from itertools import combinations

import pytest

from coplex.co2plex import count_co2plexes, count_stable_sets, enumerate_co2plexes, enumerate_stable_sets, extended_incidence_vector
from coplex.errors import InstanceTooLarge, PreconditionError
from coplex.graph import (
    Graph, complete_graph, cycle_graph, empty_graph, is_chordal, is_contraction_perfect_bruteforce,
    is_perfect_bruteforce, maximal_cliques, path_graph, random_chordal,
)
from coplex.utter import (
    UtterClique, build_utter, co2plex_to_stable, enumerate_maximal_utter_cliques, greedy_utter_clique,
    is_maximal_utter_clique, is_utter_clique, phi, phi_inverse, stable_to_co2plex,
)

from conftest import random_graphs


def test_build_examples():
    assert build_utter(Graph(2, [(0, 1)])).graph.edges == complete_graph(3).edges
    u = build_utter(path_graph(3)).graph
    assert u.n == 5 and u.m == 9 and not u.has_edge(0, 2)
    assert build_utter(empty_graph(4)).graph.m == 0


def _naive_utter_edges(g):
    """Unfold the definition pair by pair."""
    n = g.n
    out = set(g.edges)
    for e, (a, b) in enumerate(g.edges):
        for w in g.vertices:
            if w in (a, b) or g.has_edge(w, a) or g.has_edge(w, b):
                out.add((w, n + e))
    for e, f in combinations(range(g.m), 2):
        ea, eb = g.edges[e], g.edges[f]
        if set(ea) & set(eb) or any(g.has_edge(p, q) for p in ea for q in eb):
            out.add((n + e, n + f))
    return sorted(out)


def test_build_matches_definition():
    for g in random_graphs(40, 1, 8, seed=21):
        assert list(build_utter(g).graph.edges) == _naive_utter_edges(g)


def test_bijection_examples():
    p3 = path_graph(3)
    assert co2plex_to_stable(p3, [0, 2]) == (0, 2)
    assert co2plex_to_stable(p3, [0, 1]) == (3,)  # node 3 is edge ab
    with pytest.raises(PreconditionError):
        stable_to_co2plex(build_utter(p3), [0, 1])


def test_bijection_round_trip_and_counts():
    for g in random_graphs(60, 0, 7, seed=22):
        u = build_utter(g)
        images = sorted(co2plex_to_stable(g, s) for s in enumerate_co2plexes(g))
        assert images == sorted(enumerate_stable_sets(u.graph))
        for s in enumerate_co2plexes(g):
            assert stable_to_co2plex(u, co2plex_to_stable(g, s)) == s
        assert count_co2plexes(g) == count_stable_sets(u.graph)


def test_phi_examples_and_inverse():
    g = Graph(2, [(0, 1)])
    assert phi((0, 0), (1,), g) == ((1, 1), (1,))
    assert phi((3, 4), (0,), g)[0] == (3, 4)
    rng = random.Random(1)
    for g in random_graphs(30, 1, 8, seed=23):
        z = tuple(Fraction(rng.randint(-5, 5), rng.randint(1, 5)) for _ in g.vertices)
        y = tuple(Fraction(rng.randint(-5, 5), rng.randint(1, 5)) for _ in g.edges)
        assert phi_inverse(*phi(z, y, g), g) == (z, y)
        assert phi(*phi_inverse(z, y, g), g) == (z, y)


def test_phi_maps_stable_vectors_to_extended_incidence():
    for g in random_graphs(20, 1, 6, seed=24):
        u = build_utter(g)
        for t in enumerate_stable_sets(u.graph):
            z = [1 if v in t else 0 for v in g.vertices]
            y = [1 if g.n + e in t else 0 for e in range(g.m)]
            x, yy = phi(z, y, g)
            assert tuple(x) + tuple(yy) == extended_incidence_vector(g, stable_to_co2plex(u, t))


def test_utter_clique_examples():
    g = Graph(2, [(0, 1)])
    assert enumerate_maximal_utter_cliques(g) == [UtterClique((0, 1), (0,))]
    c4 = cycle_graph(4)  # u, v, w, z = 0, 1, 2, 3
    uv, wz = c4.edge_id(0, 1), c4.edge_id(2, 3)
    assert is_utter_clique(c4, [0, 1], [uv, wz])
    assert not is_maximal_utter_clique(c4, [0], [uv])


def test_chordal_shortcut_matches_clique_enumeration_of_utter_graph():
    for s in range(15):
        g = random_chordal(2 + s % 6, s)
        u = build_utter(g)
        direct = sorted(UtterClique(*u.split(c)) for c in maximal_cliques(u.graph))
        assert enumerate_maximal_utter_cliques(g) == direct


def test_chordal_maximal_utter_cliques_are_cliques():
    for s in range(15):
        g = random_chordal(2 + s % 6, s)
        got = enumerate_maximal_utter_cliques(g)
        want = sorted(UtterClique(k, tuple(sorted(g.edges_within(k) + g.cut_edges(k))))
                      for k in maximal_cliques(g))
        assert sorted(got) == want
        for c in got:
            assert is_maximal_utter_clique(g, c.vertices, c.edges)


def test_enumeration_cap():
    with pytest.raises(InstanceTooLarge):
        enumerate_maximal_utter_cliques(cycle_graph(5), cap=8)


def test_utter_chordality_and_perfectness():
    for g in random_graphs(40, 2, 8, seed=25):
        u = build_utter(g).graph
        assert is_chordal(u) == is_chordal(g)
    for g in random_graphs(40, 2, 7, seed=26):
        u = build_utter(g).graph
        assert is_contraction_perfect_bruteforce(g) == is_perfect_bruteforce(u, cap=40)


def test_greedy_utter_clique_is_maximal():
    for g in random_graphs(20, 2, 8, seed=27):
        u = build_utter(g)
        w = [Fraction(i % 5, 4) for i in range(u.graph.n)]
        c = greedy_utter_clique(u, w)
        assert is_maximal_utter_clique(g, c.vertices, c.edges, u)
