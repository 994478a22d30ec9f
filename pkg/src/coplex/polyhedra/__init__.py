"""Exact-rational linear systems, formulation builders and polyhedral certificates."""

from .builders import (
    build_chordal_extended, build_clique_extended, build_E, build_Nk, build_T, build_two_plex_system,
    build_utter_clique_system, delta_row, edge_row, generalized_star_inequality, hole_inequality,
    lift_facet, star_inequality, two_plex_inequality, utter_clique_inequality,
)
from .certify import (
    characpolytope_witness, co2plex_polytope_dimension, incidence_points, is_facet,
    is_valid_inequality, membership_via_extension, polytope_dimension, star_facet_conditions,
)
from .linear import EXTENDED, NATURAL, LinearInequality, LinearSystem
from .vertices import (
    enumerate_vertices, fractional_vertices, is_extreme_point, is_integer_polytope, is_integral,
)

__all__ = [
    "EXTENDED", "NATURAL", "LinearInequality", "LinearSystem", "build_E", "build_Nk", "build_T",
    "build_chordal_extended", "build_clique_extended", "build_two_plex_system", "build_utter_clique_system",
    "characpolytope_witness", "co2plex_polytope_dimension", "delta_row", "edge_row",
    "enumerate_vertices", "fractional_vertices", "generalized_star_inequality", "hole_inequality", "incidence_points",
    "is_extreme_point", "is_facet", "is_integer_polytope", "is_integral", "is_valid_inequality", "lift_facet",
    "membership_via_extension", "polytope_dimension", "star_facet_conditions", "star_inequality",
    "two_plex_inequality", "utter_clique_inequality",
]
