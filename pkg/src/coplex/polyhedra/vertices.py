"""Vertex enumeration and extreme-point certification for bounded rational systems.

Two independent enumerators are provided.  The main one hands the
H-representation to cddlib's double description method in exact fraction
mode.  The other solves every square subsystem of rows and keeps feasible,
distinct solutions; it is exponential and only meant for tiny systems, where
it cross-checks the first.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

import cdd
import numpy as np

from ..errors import InstanceTooLarge, PreconditionError
from .exact import rank, solve_square
from .linear import LinearInequality, LinearSystem

CDD_VARIABLE_CAP = 48
CDD_ROW_CAP = 4096
BASIS_VARIABLE_CAP = 12
BASIS_ROW_CAP = 40

Point = tuple[Fraction, ...]


def _dense_rows(system: LinearSystem) -> list[tuple[list[Fraction], Fraction]]:
    return [(row.dense(system.size), row.rhs) for row in system.all_rows()]


def enumerate_vertices_cdd(system: LinearSystem, variable_cap: int = CDD_VARIABLE_CAP,
                           row_cap: int = CDD_ROW_CAP) -> list[Point]:
    rows = _dense_rows(system)
    if system.size > variable_cap or len(rows) > row_cap:
        raise InstanceTooLarge(
            f"vertex enumeration capped at {variable_cap} variables and {row_cap} rows, "
            f"got {system.size} and {len(rows)}")
    if system.size == 0:
        return [()]
    # cdd reads b - A x >= 0 as the row [b, -A]
    mat = cdd.Matrix([[b] + [-a for a in coeffs] for coeffs, b in rows], number_type="fraction")
    mat.rep_type = cdd.RepType.INEQUALITY
    gens = cdd.Polyhedron(mat).get_generators()
    if gens.lin_set:
        raise PreconditionError("the system contains a line; vertex enumeration needs a pointed polyhedron")
    out = set()
    for i in range(gens.row_size):
        row = gens[i]
        if row[0] == 0:
            raise PreconditionError("the system is unbounded")
        out.add(tuple(Fraction(v) for v in row[1:]))
    points = sorted(out)
    # cdd is trusted for completeness only; each reported vertex is re-certified exactly
    bad = _uncertified(rows, points, system)
    if bad is not None:
        raise PreconditionError(f"cdd reported {bad}, which is not an extreme point")
    return points


def _integer_rows(rows) -> tuple[list[list[int]], list[int]]:
    coeffs, rhs = [], []
    for a, b in rows:
        scale = math.lcm(Fraction(b).denominator, *(Fraction(v).denominator for v in a))
        coeffs.append([int(v * scale) for v in a])
        rhs.append(int(b * scale))
    return coeffs, rhs


def _uncertified(rows, points: Sequence[Point], system: LinearSystem) -> Point | None:
    """First point that is infeasible or not extreme, else None (exact integer arithmetic)."""
    if not points:
        return None
    A, b = _integer_rows(rows)
    denoms = [math.lcm(*(x.denominator for x in pt)) for pt in points]
    X = [[int(x * d) for x in pt] for pt, d in zip(points, denoms)]
    big = max(max((abs(v) for r in A for v in r), default=0), max(abs(v) for v in b), 1)
    top = max(max((abs(v) for r in X for v in r), default=0), max(denoms))
    exact_int64 = big * top * (system.size + 1) < 2**62
    dtype = np.int64 if exact_int64 else object
    lhs = np.array(A, dtype=dtype) @ np.array(X, dtype=dtype).T
    rhs = np.array(b, dtype=dtype)[:, None] * np.array(denoms, dtype=dtype)[None, :]
    feasible = (lhs <= rhs).all(axis=0)
    tight = lhs == rhs
    for j, pt in enumerate(points):
        if not feasible[j]:
            return pt
        # a feasible point at a box corner is a vertex of the box, hence of anything inside it
        if all(x == lo or x == hi for x, lo, hi in zip(pt, system.lower, system.upper)):
            continue
        chosen = [A[i] for i in np.flatnonzero(tight[:, j])]
        if rank(chosen, stop_at=system.size) < system.size:
            return pt
    return None


def enumerate_vertices_basis(system: LinearSystem, variable_cap: int = BASIS_VARIABLE_CAP,
                             row_cap: int = BASIS_ROW_CAP) -> list[Point]:
    rows = _dense_rows(system)
    n = system.size
    if n > variable_cap or len(rows) > row_cap:
        raise InstanceTooLarge(
            f"basis enumeration capped at {variable_cap} variables and {row_cap} rows, "
            f"got {n} and {len(rows)}")
    found = set()
    for pick in combinations(range(len(rows)), n):
        point = solve_square([rows[i][0] for i in pick], [rows[i][1] for i in pick])
        if point is None or point in found:
            continue
        if all(sum(a * x for a, x in zip(coeffs, point)) <= b for coeffs, b in rows):
            found.add(point)
    return sorted(found)


def enumerate_vertices(system: LinearSystem, method: str = "cdd", **caps) -> list[Point]:
    """Every extreme point exactly once, sorted lexicographically."""
    if method == "cdd":
        return enumerate_vertices_cdd(system, **caps)
    if method == "basis":
        return enumerate_vertices_basis(system, **caps)
    raise ValueError(f"unknown enumeration method {method!r}")


def is_integral(point: Sequence[Fraction]) -> bool:
    return all(Fraction(v).denominator == 1 for v in point)


def fractional_vertices(system: LinearSystem, **kwargs) -> list[Point]:
    return [p for p in enumerate_vertices(system, **kwargs) if not is_integral(p)]


def is_integer_polytope(system: LinearSystem, **kwargs) -> bool:
    return all(is_integral(p) for p in enumerate_vertices(system, **kwargs))


def tight_rows(system: LinearSystem, point: Sequence, rows: Iterable[LinearInequality] | None = None) -> list[LinearInequality]:
    pool = system.all_rows() if rows is None else list(rows)
    return [r for r in pool if r.is_tight(point)]


def is_extreme_point(system: LinearSystem, point: Sequence, rows: Iterable[LinearInequality] | None = None) -> bool:
    """Feasible, and the tight rows have rank equal to the variable count.

    ``rows`` restricts the rank test to a chosen family (they must all be tight);
    feasibility is always checked against the full system.
    """
    point = tuple(Fraction(v) for v in point)
    if len(point) != system.size or not system.contains(point):
        return False
    if rows is not None:
        rows = list(rows)
        if not all(r.is_tight(point) for r in rows):
            return False
        chosen = rows
    else:
        chosen = tight_rows(system, point)
    return rank([r.dense(system.size) for r in chosen], stop_at=system.size) == system.size
