"""Exact two-phase tableau simplex over Fractions, Bland's rule throughout.

Meant for desk-scale certification (tens of variables), not for speed.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple, Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


class ExactLPResult(NamedTuple):
    status: str
    value: Fraction | None
    x: tuple[Fraction, ...] | None


def _pivot(tab: list[list[Fraction]], basis: list[int], r: int, c: int) -> None:
    row = tab[r]
    p = row[c]
    if p != 1:
        tab[r] = row = [v / p for v in row]
    for i, other in enumerate(tab):
        if i != r:
            f = other[c]
            if f:
                tab[i] = [a - f * b for a, b in zip(other, row)]
    basis[r] = c


def _run(tab: list[list[Fraction]], basis: list[int], allowed: int) -> bool:
    """Maximise the objective kept in the last row (stored as reduced costs).

    The last row holds ``-c_j`` plus updates, so a negative entry means the
    column improves the objective.  Returns False when unbounded.
    """
    m = len(tab) - 1
    obj = tab[m]
    while True:
        obj = tab[m]
        enter = next((j for j in range(allowed) if obj[j] < 0), None)
        if enter is None:
            return True
        best = None
        for i in range(m):
            a = tab[i][enter]
            if a > 0:
                ratio = tab[i][-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            return False
        _pivot(tab, basis, best[1], enter)


def solve_exact_lp(c: Sequence, A: Sequence[Sequence], b: Sequence,
                   lower: Sequence | None = None, upper: Sequence | None = None) -> ExactLPResult:
    """Maximise ``c x`` subject to ``A x <= b`` and ``lower <= x <= upper``.

    ``lower`` defaults to zero; entries of ``upper`` may be None.  Lower bounds
    must be finite.
    """
    n = len(c)
    c = [Fraction(v) for v in c]
    lower = [Fraction(0)] * n if lower is None else [Fraction(v) for v in lower]
    upper = [None] * n if upper is None else [None if v is None else Fraction(v) for v in upper]
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for a, beta in zip(A, b):
        a = [Fraction(v) for v in a]
        rows.append(a)
        rhs.append(Fraction(beta) - sum((ai * li for ai, li in zip(a, lower)), Fraction(0)))
    for j in range(n):
        if upper[j] is not None:
            if upper[j] < lower[j]:
                return ExactLPResult(INFEASIBLE, None, None)
            e = [Fraction(0)] * n
            e[j] = Fraction(1)
            rows.append(e)
            rhs.append(upper[j] - lower[j])
    m = len(rows)
    # columns: n structural, m slacks, then one artificial per negative-rhs row
    negative = [i for i in range(m) if rhs[i] < 0]
    n_art = len(negative)
    width = n + m + n_art
    tab: list[list[Fraction]] = []
    basis: list[int] = []
    art_col = {}
    for k, i in enumerate(negative):
        art_col[i] = n + m + k
    for i in range(m):
        row = [Fraction(0)] * (width + 1)
        sign = -1 if i in art_col else 1
        for j in range(n):
            row[j] = sign * rows[i][j]
        row[n + i] = Fraction(sign)
        row[-1] = sign * rhs[i]
        if i in art_col:
            row[art_col[i]] = Fraction(1)
            basis.append(art_col[i])
        else:
            basis.append(n + i)
        tab.append(row)

    if n_art:
        # phase one: maximise -sum(artificials)
        obj = [Fraction(0)] * (width + 1)
        for i in negative:
            obj = [o - v for o, v in zip(obj, tab[i])]
        for i in negative:
            obj[art_col[i]] = Fraction(0)
        tab.append(obj)
        _run(tab, basis, width)
        if tab[-1][-1] != 0:
            return ExactLPResult(INFEASIBLE, None, None)
        tab.pop()
        # drive leftover artificials out of the basis where possible
        for r in range(m):
            if basis[r] >= n + m:
                col = next((j for j in range(n + m) if tab[r][j] != 0), None)
                if col is not None:
                    _pivot(tab, basis, r, col)
        for r in range(m):
            tab[r] = tab[r][:n + m] + [tab[r][-1]]
    width = n + m

    obj = [Fraction(0)] * (width + 1)
    for j in range(n):
        obj[j] = -c[j]
    for r, bv in enumerate(basis):
        if bv < n and c[bv]:
            f = obj[bv]
            obj = [o - f * v for o, v in zip(obj, tab[r])]
    tab.append(obj)
    if not _run(tab, basis, width):
        return ExactLPResult(UNBOUNDED, None, None)
    x = list(lower)
    for r, bv in enumerate(basis):
        if bv < n:
            x[bv] = lower[bv] + tab[r][-1]
    value = sum((ci * xi for ci, xi in zip(c, x)), Fraction(0))
    return ExactLPResult(OPTIMAL, value, tuple(x))


def is_feasible_exact(A: Sequence[Sequence], b: Sequence, lower=None, upper=None) -> bool:
    n = len(A[0]) if A else (len(lower) if lower is not None else 0)
    return solve_exact_lp([0] * n, A, b, lower, upper).status == OPTIMAL
