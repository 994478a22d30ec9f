"""Exact linear algebra over Fractions: rank, affine rank, square solves."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def rank(rows: Sequence[Sequence], stop_at: int | None = None) -> int:
    """Row rank by Gaussian elimination; returns early once ``stop_at`` is reached."""
    basis: list[tuple[int, list[Fraction]]] = []  # (pivot column, normalised row)
    for raw in rows:
        row = [Fraction(v) for v in raw]
        for col, b in basis:
            f = row[col]
            if f:
                row = [a - f * c for a, c in zip(row, b)]
        pivot = next((j for j, v in enumerate(row) if v), None)
        if pivot is None:
            continue
        p = row[pivot]
        basis.append((pivot, [v / p for v in row]))
        if stop_at is not None and len(basis) >= stop_at:
            break
    return len(basis)


def affine_rank(points: Sequence[Sequence], stop_at: int | None = None) -> int:
    """Dimension of the affine hull of ``points`` (-1 for no points)."""
    if not points:
        return -1
    base = points[0]
    diffs = [[a - b for a, b in zip(p, base)] for p in points[1:]]
    return rank(diffs, stop_at)


def solve_square(matrix: Sequence[Sequence], rhs: Sequence) -> tuple[Fraction, ...] | None:
    """Unique solution of a square system, or None when singular."""
    n = len(matrix)
    aug = [[Fraction(v) for v in row] + [Fraction(b)] for row, b in zip(matrix, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col]), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [v / p for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return tuple(aug[r][n] for r in range(n))
