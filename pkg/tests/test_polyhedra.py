import random
from fractions import Fraction
from itertools import product

import pytest

from coplex.co2plex import alpha2, enumerate_2plexes, enumerate_co2plexes, incidence_vector, is_co2plex, is_maximal_2plex
from coplex.errors import InstanceTooLarge, PreconditionError
from coplex.graph import (
    Graph, complete_graph, cycle_graph, empty_graph, generate_er, hole_length, is_connected, is_contraction_perfect_bruteforce,
    path_graph, random_chordal, random_tree, star_graph,
)
from coplex.polyhedra import (
    EXTENDED, NATURAL, LinearInequality, build_chordal_extended, build_clique_extended, build_E, build_Nk, build_T,
    build_two_plex_system, build_utter_clique_system, characpolytope_witness, co2plex_polytope_dimension,
    enumerate_vertices, fractional_vertices, generalized_star_inequality, hole_inequality, incidence_points,
    is_extreme_point, is_facet, is_integer_polytope, is_valid_inequality, lift_facet, membership_via_extension,
    star_facet_conditions, star_inequality, two_plex_inequality, utter_clique_inequality,
)
from coplex.polyhedra.builders import add_apex
from coplex.polyhedra.certify import star_rows_satisfied
from coplex.polyhedra.linear import LinearSystem, y_index
from coplex.polyhedra.rational_lp import solve_exact_lp
from coplex.utter import build_utter, enumerate_maximal_utter_cliques, is_maximal_utter_clique, is_utter_clique

from conftest import random_graphs, star13

F = Fraction
HALF = F(1, 2)


def rows_as_text(system):
    return sorted((tuple(sorted(r.coeffs.items())), r.rhs) for r in system.rows)


# -- LinearInequality / LinearSystem -------------------------------------------

def test_inequality_drops_zero_and_evaluates():
    ineq = LinearInequality(NATURAL, {0: 1, 1: 0, 2: F(1, 2)}, 1, "r")
    assert ineq.coeffs == {0: 1, 2: HALF}
    assert ineq.violation([1, 5, 1]) == HALF
    assert ineq.is_tight([1, 0, 0]) and not ineq.is_satisfied([1, 0, 2])


def test_lp_text_export():
    text = build_T(star13()).to_lp_text()
    assert "star_w0_W{1,2,3}" in text and text.rstrip().endswith("End")
    assert "General" in text


# -- builders ---------------------------------------------------------------

def test_Nk_examples():
    nk = build_Nk(star13(), 2)
    assert len(nk.rows) == 1
    assert nk.rows[0].coeffs == {0: 2, 1: 1, 2: 1, 3: 1} and nk.rows[0].rhs == 3
    assert build_Nk(Graph(2, [(0, 1)]), 2).rows == []


def _binary_points(n):
    return [tuple(p) for p in product((0, 1), repeat=n)]


def test_N1_integer_points_are_stable_sets():
    for g in random_graphs(15, 1, 7, seed=31):
        system = build_Nk(g, 1)
        for p in _binary_points(g.n):
            chosen = [v for v in g.vertices if p[v]]
            stable = all(not g.has_edge(a, b) for a in chosen for b in chosen if a < b)
            assert system.contains(p) == stable


def test_N2_integer_points_are_co2plexes():
    for g in random_graphs(15, 1, 8, seed=32):
        system = build_Nk(g, 2)
        for p in _binary_points(g.n):
            assert system.contains(p) == is_co2plex(g, [v for v in g.vertices if p[v]])


def test_E_single_edge_rows():
    e = build_E(Graph(2, [(0, 1)]))
    rows = rows_as_text(e)
    assert ((((0, -1), (2, 1)), 0)) in rows and ((((1, -1), (2, 1)), 0)) in rows
    assert ((((0, 1), (1, 1), (2, -1)), 1)) in rows
    assert e.upper == [1, 1, 1]


def test_E_integer_points_project_to_co2plexes():
    for g in random_graphs(15, 1, 8, seed=33):
        system = build_E(g)
        for p in _binary_points(g.n):
            # y is forced to the product of its endpoints by the box and the edge rows
            y = tuple(p[u] * p[v] for u, v in g.edges)
            assert system.contains(p + y) == is_co2plex(g, [v for v in g.vertices if p[v]])


def test_membership_via_extension_examples():
    s = star13()
    assert not membership_via_extension(s, (HALF, 1, 1, 0))
    assert not membership_via_extension(s, (F(2, 3),) * 4)
    for t in enumerate_co2plexes(s):
        assert membership_via_extension(s, incidence_vector(s, t))


def test_membership_agrees_with_star_rows():
    rng = random.Random(7)
    for g in random_graphs(40, 2, 7, seed=34):
        for _ in range(5):
            x = tuple(F(rng.randint(0, 6), 6) for _ in g.vertices)
            assert membership_via_extension(g, x) == star_rows_satisfied(g, x)


def test_chordal_extended_examples():
    t = random_tree(7, 3)
    assert rows_as_text(build_chordal_extended(t)) == rows_as_text(build_E(t))
    k3 = build_chordal_extended(complete_graph(3))
    clique_rows = [r for r in k3.rows if r.label.startswith("clique")]
    big = [r for r in clique_rows if len(r.coeffs) == 6]
    assert len(big) == 1 and big[0].rhs == 1
    assert big[0].coeffs == {0: 1, 1: 1, 2: 1, 3: -1, 4: -1, 5: -1}
    with pytest.raises(PreconditionError):
        build_chordal_extended(cycle_graph(4))


def test_chordal_extended_vertices_are_incidence_vectors():
    for s in range(12):
        g = random_chordal(2 + s % 5, s)
        verts = enumerate_vertices(build_chordal_extended(g))
        assert sorted(tuple(int(v) for v in p) for p in verts) == sorted(incidence_points(g, EXTENDED))


def test_utter_clique_system_examples():
    for s in range(10):
        g = random_chordal(2 + s % 6, s)
        assert rows_as_text(build_utter_clique_system(g)) == rows_as_text(build_chordal_extended(g))
    single = build_utter_clique_system(Graph(2, [(0, 1)]))
    assert any(r.coeffs == {0: 1, 1: 1, 2: -1} and r.rhs == 1 for r in single.rows)
    assert fractional_vertices(build_utter_clique_system(cycle_graph(5)))


def test_T_examples():
    t = build_T(star13())
    full = star_inequality(star13(), 0, [1, 2, 3])
    assert full.coeffs == {0: 2, 1: 1, 2: 1, 3: 1} and full.rhs == 3
    assert any(r.key() == full.key() for r in t.rows)
    single = star_inequality(star13(), 0, [2])
    assert single.coeffs == {2: 1} and single.rhs == 1
    with pytest.raises(InstanceTooLarge):
        build_T(star_graph(17))
    with pytest.raises(PreconditionError):
        star_inequality(star13(), 1, [2])


def test_T_of_trees_is_integral():
    for s in range(12):
        g = random_tree(2 + s % 7, s)
        verts = enumerate_vertices(build_T(g))
        assert sorted(tuple(int(v) for v in p) for p in verts) == sorted(incidence_points(g))


def test_T_of_holes():
    assert is_integer_polytope(build_T(cycle_graph(6)))
    assert not is_integer_polytope(build_T(cycle_graph(5)))


def test_twoplex_and_hole_inequalities():
    k = Graph(4, [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)])  # triangle plus u adjacent to t1 and t2
    assert two_plex_inequality(k, range(4)).rhs == 2
    with pytest.raises(PreconditionError):
        two_plex_inequality(path_graph(4), range(4))
    c5 = hole_inequality(cycle_graph(5))
    assert c5.rhs == 3 and is_facet(cycle_graph(5), c5)
    c6 = hole_inequality(cycle_graph(6))
    assert c6.rhs == 4 and c6.label.endswith("_nonfacet") and not is_facet(cycle_graph(6), c6)
    with pytest.raises(PreconditionError):
        hole_inequality(path_graph(5))


# -- certification ----------------------------------------------------------

def test_validity_examples():
    for g in random_graphs(10, 2, 7, seed=35):
        for w in g.vertices:
            if g.neighbors(w):
                assert is_valid_inequality(g, star_inequality(g, w, g.neighbors(w)))
        a = alpha2(g)
        assert not is_valid_inequality(g, LinearInequality(NATURAL, {v: 1 for v in g.vertices}, a - 1))
        for e, (u, v) in enumerate(g.edges):
            row = LinearInequality(EXTENDED, {u: 1, v: 1, g.n + e: -1}, 1)
            assert is_valid_inequality(g, row)


def test_trivial_facets_and_invalid_input():
    for g in random_graphs(8, 1, 7, seed=36):
        for v in g.vertices:
            assert is_facet(g, LinearInequality(NATURAL, {v: 1}, 1))
            assert is_facet(g, LinearInequality(NATURAL, {v: -1}, 0))
    g = cycle_graph(5)
    with pytest.raises(PreconditionError):
        is_facet(g, LinearInequality(NATURAL, {v: 1 for v in g.vertices}, 2))


def test_full_dimension():
    for g in random_graphs(10, 1, 8, seed=37):
        assert co2plex_polytope_dimension(g) == g.n


def test_twoplex_facet_sweep_small():
    for g in random_graphs(12, 3, 7, seed=38):
        for k in enumerate_2plexes(g, min_size=3):
            assert is_facet(g, two_plex_inequality(g, k)) == is_maximal_2plex(g, k)


def test_triangle_with_two_hangers_facet():
    # t1, t2, t3 = 0, 1, 2; u = 3 hangs off t1 and v = 4 off t2
    g = Graph(5, [(0, 1), (0, 2), (1, 2), (0, 3), (1, 4)])
    row = LinearInequality(NATURAL, {v: 1 for v in g.vertices}, 3)
    assert is_facet(g, row)
    assert not any(set(r.coeffs) == set(g.vertices) for r in build_T(g).rows)
    # joining u and v closes the hole u t1 t2 v; the row stays valid but only
    # three co-2-plexes meet it with equality
    g = g.with_edge(3, 4)
    assert is_valid_inequality(g, row) and not is_facet(g, row)


def test_star_facet_conditions_examples():
    for s in range(6):
        t = random_tree(6, s)
        for w in t.vertices:
            nb = t.neighbors(w)
            for size in range(1, len(nb) + 1):
                assert star_facet_conditions(t, w, nb[:size])
    g = Graph(5, [(0, 1), (0, 2), (0, 3), (4, 1), (4, 2), (4, 3)])  # star plus u=4 complete to leaves
    assert not star_facet_conditions(g, 0, [1, 2, 3])
    assert not is_facet(g, generalized_star_inequality(g, 0, [1, 2, 3]))


def test_lifting_examples():
    two = empty_graph(2)
    row = LinearInequality(NATURAL, {0: 1, 1: 1}, 2, "pair")
    g = add_apex(two, [0, 1])
    with pytest.raises(PreconditionError):
        lift_facet(g, row, 2)  # x_u + x_v <= 2 is a vertex, not a facet, of the square
    lifted = lift_facet(g, row, 2, check=False)
    assert lifted.coeffs == {0: 1, 1: 1, 2: 1} and lifted.rhs == 2 and is_facet(g, lifted)
    g = add_apex(empty_graph(1), [0])
    degenerate = lift_facet(g, LinearInequality(NATURAL, {0: 1}, 1), 1)
    assert degenerate.coeffs == {0: 1} and degenerate.rhs == 1
    with pytest.raises(PreconditionError):
        lift_facet(add_apex(empty_graph(2), [0]), row, 2, check=False)


def test_lifting_tree_star_facets():
    for s in range(10):
        t = random_tree(6, s)
        w = max(t.vertices, key=t.degree)
        nb = t.neighbors(w)
        ineq = star_inequality(t, w, nb)
        g = add_apex(t, ineq.support())
        assert is_facet(g, lift_facet(g, ineq, t.n))


# -- vertex enumeration ------------------------------------------------------

def test_T_star_vertices_both_methods():
    s = star13()
    expect = sorted(incidence_points(s))
    for method in ("cdd", "basis"):
        verts = enumerate_vertices(build_T(s), method=method)
        assert sorted(tuple(int(v) for v in p) for p in verts) == expect


def test_cdd_and_basis_agree():
    for g in random_graphs(25, 2, 5, seed=39):
        for system in (build_Nk(g, 2), build_T(g)):
            if len(system.all_rows()) <= 20:
                assert enumerate_vertices(system, method="cdd") == enumerate_vertices(system, method="basis")


def test_enumeration_caps():
    with pytest.raises(InstanceTooLarge):
        enumerate_vertices(build_Nk(empty_graph(13), 2), method="basis")
    with pytest.raises(ValueError):
        enumerate_vertices(build_Nk(empty_graph(2), 2), method="magic")


def test_c4_half_point_extreme():
    g = cycle_graph(4)
    y = [HALF if g.edges[e] == (2, 3) else F(0) for e in range(g.m)]
    point = (HALF,) * 4 + tuple(y)
    assert is_extreme_point(build_clique_extended(g), point)
    assert not is_extreme_point(build_clique_extended(g), (HALF,) * 4 + (F(0),) * 4)


def test_characpolytope_witness():
    for p in (6, 9):
        g = add_apex(cycle_graph(p), [1])
        x = characpolytope_witness(g)
        assert is_extreme_point(build_T(g), x)
        assert any(v.denominator != 1 for v in x)
        assert x[p] == 1
    with pytest.raises(PreconditionError):
        characpolytope_witness(random_tree(6, 1))


def test_alternative_half_pattern_is_not_extreme():
    # x_u = 1/2 and the 1-entries one step after the attachment: a midpoint of two co-2-plexes
    g = add_apex(cycle_graph(6), [0])
    x = [HALF] * 7
    for i in (1, 4):
        x[i] = F(1)
    assert build_T(g).contains(x) and not is_extreme_point(build_T(g), x)


# -- relaxation orderings and redundancy -------------------------------------

def _lp_max(system, c):
    rows = system.rows
    res = solve_exact_lp(list(c) + [0] * (system.size - len(c)), [r.dense(system.size) for r in rows],
                         [r.rhs for r in rows], system.lower, system.upper)
    return res.value


def test_E_tighter_than_N2_exact():
    rng = random.Random(3)
    for g in random_graphs(12, 2, 7, seed=40):
        for _ in range(2):
            c = [F(rng.randint(0, 5)) for _ in g.vertices]
            assert _lp_max(build_E(g), c) <= _lp_max(build_Nk(g, 2), c)


def test_utter_clique_system_tighter_than_twoplex_system():
    rng = random.Random(4)
    for g in random_graphs(10, 2, 6, seed=41):
        n2 = build_Nk(g, 2)
        n2.extend(build_two_plex_system(g).rows)
        for _ in range(2):
            c = [F(rng.randint(0, 5)) for _ in g.vertices]
            assert _lp_max(build_utter_clique_system(g), c) <= _lp_max(n2, c)


def _clique_split(g, k):
    """Split a 2-plex into two cliques along the matching of missing edges."""
    k1, k2 = [], []
    for v in k:
        if v in k2:
            continue
        k1.append(v)
        k2.extend(u for u in k if u != v and u not in k1 and not g.has_edge(u, v))
    return sorted(k1), sorted(k2)


def test_twoplex_row_is_sum_of_two_utter_clique_rows():
    for g in random_graphs(20, 3, 8, seed=42):
        for k in enumerate_2plexes(g, min_size=3):
            k1, k2 = _clique_split(g, k)
            e1, e2 = g.edges_within(k1), g.edges_within(k2)
            assert is_utter_clique(g, k1, e2) and is_utter_clique(g, k2, e1)
            total = utter_clique_inequality(g, k1, e2) + utter_clique_inequality(g, k2, e1)
            target = two_plex_inequality(g, k)
            assert total.coeffs == target.coeffs and total.rhs == target.rhs


def test_non_maximal_utter_clique_rows_are_implied():
    for g in random_graphs(10, 3, 6, seed=43):
        system = build_utter_clique_system(g)
        u = build_utter(g)
        for c in enumerate_maximal_utter_cliques(g):
            if len(c.vertices) + len(c.edges) < 2:
                continue
            w, f = c.vertices[1:], c.edges  # drop one vertex: still a clique, no longer maximal
            if not w and not f:
                continue
            assert not is_maximal_utter_clique(g, w, f, u)
            row = utter_clique_inequality(g, w, f)
            assert _lp_max_row(system, row) <= row.rhs


def _lp_max_row(system, row):
    c = row.dense(system.size)
    rows = system.rows
    return solve_exact_lp(c, [r.dense(system.size) for r in rows], [r.rhs for r in rows],
                          system.lower, system.upper).value


def test_twoplex_system_characterisation():
    rng = random.Random(44)
    checked = 0
    while checked < 30:
        g = generate_er(rng.randint(2, 7), rng.choice((0.3, 0.5, 0.7)), rng.randrange(2**31))
        if not is_connected(g):
            continue
        checked += 1
        vs = list(g.vertices)
        is_path = g.m == g.n - 1 and max(g.degree(v) for v in vs) <= 2
        length = hole_length(g)
        from coplex.co2plex import is_2plex
        expected = (is_2plex(g, vs) or is_co2plex(g, vs) or is_path or (length is not None and length % 3 == 0))
        assert is_integer_polytope(build_two_plex_system(g)) == expected


def test_integrality_matches_contraction_perfectness():
    for g in random_graphs(25, 1, 6, seed=45):
        assert is_integer_polytope(build_utter_clique_system(g)) == is_contraction_perfect_bruteforce(g)


def test_vertex_certifier_rejects_non_vertices():
    from coplex.polyhedra.vertices import _dense_rows, _uncertified

    g = cycle_graph(5)
    system = build_Nk(g, 2)
    rows = _dense_rows(system)
    verts = enumerate_vertices(system)
    assert _uncertified(rows, verts, system) is None
    centre = tuple(sum(col) / len(verts) for col in zip(*verts))
    assert _uncertified(rows, verts + [centre], system) == centre
    outside = (Fraction(2),) + (Fraction(0),) * 4
    assert _uncertified(rows, [outside], system) == outside
