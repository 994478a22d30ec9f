"""LP backends behind one small contract.

``solve(c, rows, rhs, lower, upper)`` maximises ``c x`` over ``rows x <= rhs``
and the box, returning an :class:`LPResult`.  The float backend wraps HiGHS
through scipy; the rational backend runs the exact simplex.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple, Sequence

import numpy as np
from scipy.optimize import linprog

from ..errors import LPError
from ..polyhedra.rational_lp import INFEASIBLE, OPTIMAL, UNBOUNDED, solve_exact_lp

FLOAT = "float"
RATIONAL = "rational"


class LPResult(NamedTuple):
    status: str  # optimal | infeasible
    value: object
    x: tuple


class HighsBackend:
    arithmetic = FLOAT
    supports_warm_start = False
    feasibility_tolerance = 1e-7

    def solve(self, c: Sequence, rows: np.ndarray, rhs: np.ndarray, lower: Sequence, upper: Sequence) -> LPResult:
        c = np.asarray(c, dtype=float)
        bounds = list(zip(lower, upper))
        kwargs = {}
        if len(rhs):
            kwargs = {"A_ub": rows, "b_ub": rhs}
        res = linprog(-c, bounds=bounds, method="highs-ds",
                      options={"primal_feasibility_tolerance": self.feasibility_tolerance,
                               "dual_feasibility_tolerance": self.feasibility_tolerance}, **kwargs)
        if res.status == 0:
            return LPResult(OPTIMAL, float(-res.fun), tuple(float(v) for v in res.x))
        if res.status == 2:
            return LPResult(INFEASIBLE, None, ())
        if res.status == 3:
            raise LPError("LP relaxation is unbounded")
        raise LPError(f"HiGHS failed: {res.message}")


class RationalBackend:
    arithmetic = RATIONAL
    supports_warm_start = False

    def solve(self, c, rows, rhs, lower, upper) -> LPResult:
        res = solve_exact_lp(c, rows, rhs, lower, upper)
        if res.status == OPTIMAL:
            return LPResult(OPTIMAL, res.value, res.x)
        if res.status == INFEASIBLE:
            return LPResult(INFEASIBLE, None, ())
        if res.status == UNBOUNDED:
            raise LPError("LP relaxation is unbounded")
        raise LPError(f"exact simplex returned {res.status}")


def make_backend(arithmetic: str = FLOAT):
    if arithmetic == FLOAT:
        return HighsBackend()
    if arithmetic == RATIONAL:
        return RationalBackend()
    raise ValueError(f"unknown arithmetic {arithmetic!r}")


def to_number(value, arithmetic: str):
    return Fraction(value) if arithmetic == RATIONAL else float(value)
