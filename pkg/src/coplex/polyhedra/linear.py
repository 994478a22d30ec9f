"""Sparse rational inequalities over the natural or extended variable space.

Natural space has one variable ``x_v`` per vertex.  Extended space appends one
``y_e`` per edge, so variable ``n + e`` is ``y_e``.  Every system in this
package is box-bounded in [0, 1].
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from ..graph import Graph

NATURAL = "natural"
EXTENDED = "extended"
SPACES = (NATURAL, EXTENDED)


def variable_count(graph: Graph, space: str) -> int:
    if space == NATURAL:
        return graph.n
    if space == EXTENDED:
        return graph.n + graph.m
    raise ValueError(f"unknown space {space!r}")


def variable_name(graph: Graph, index: int) -> str:
    if index < graph.n:
        return f"x{index}"
    u, v = graph.edge(index - graph.n)
    return f"y{u}_{v}"


def y_index(graph: Graph, u: int, v: int) -> int:
    return graph.n + graph.edge_id(u, v)


def format_set(items: Iterable[int]) -> str:
    return "{" + ",".join(str(i) for i in items) + "}"


@dataclass(frozen=True)
class LinearInequality:
    """``sum coeffs[i] * v_i <= rhs``; zero coefficients are dropped on construction."""

    space: str
    coeffs: Mapping[int, Fraction]
    rhs: Fraction
    label: str = ""

    def __post_init__(self):
        if self.space not in SPACES:
            raise ValueError(f"unknown space {self.space!r}")
        clean = {int(i): Fraction(c) for i, c in sorted(self.coeffs.items()) if c != 0}
        object.__setattr__(self, "coeffs", clean)
        object.__setattr__(self, "rhs", Fraction(self.rhs))

    @classmethod
    def from_terms(cls, space: str, terms: Iterable[tuple[int, object]], rhs, label: str = "") -> "LinearInequality":
        """Build from ``(index, coefficient)`` pairs, summing repeated indices."""
        acc: dict[int, Fraction] = {}
        for i, c in terms:
            acc[i] = acc.get(i, Fraction(0)) + Fraction(c)
        return cls(space, acc, Fraction(rhs), label)

    def lhs(self, point: Sequence) -> object:
        total = 0
        for i, c in self.coeffs.items():
            total += c * point[i]
        return total

    def violation(self, point: Sequence) -> object:
        return self.lhs(point) - self.rhs

    def is_satisfied(self, point: Sequence) -> bool:
        return self.lhs(point) <= self.rhs

    def is_tight(self, point: Sequence) -> bool:
        return self.lhs(point) == self.rhs

    def dense(self, size: int) -> list[Fraction]:
        row = [Fraction(0)] * size
        for i, c in self.coeffs.items():
            if i >= size:
                raise ValueError(f"variable {i} outside a space of size {size}")
            row[i] = c
        return row

    def support(self) -> tuple[int, ...]:
        return tuple(self.coeffs)

    def key(self) -> tuple:
        """Label-free identity used to deduplicate cut pools."""
        return (self.space, tuple(self.coeffs.items()), self.rhs)

    def scaled(self, factor) -> "LinearInequality":
        factor = Fraction(factor)
        if factor <= 0:
            raise ValueError("only positive scaling preserves the sense")
        return LinearInequality(self.space, {i: c * factor for i, c in self.coeffs.items()},
                                self.rhs * factor, self.label)

    def __add__(self, other: "LinearInequality") -> "LinearInequality":
        if self.space != other.space:
            raise ValueError("cannot add inequalities from different spaces")
        terms = list(self.coeffs.items()) + list(other.coeffs.items())
        return LinearInequality.from_terms(self.space, terms, self.rhs + other.rhs)

    def to_text(self, graph: Graph) -> str:
        parts = []
        for i, c in self.coeffs.items():
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            coef = "" if mag == 1 else f"{_num(mag)} "
            parts.append(f"{sign} {coef}{variable_name(graph, i)}")
        body = " ".join(parts) if parts else "0"
        if body.startswith("+ "):
            body = body[2:]
        return f"{body} <= {_num(self.rhs)}"


@dataclass
class LinearSystem:
    graph: Graph
    space: str
    rows: list[LinearInequality] = field(default_factory=list)
    lower: list[Fraction] = field(default_factory=list)
    upper: list[Fraction] = field(default_factory=list)
    integer: list[bool] = field(default_factory=list)
    name: str = ""

    def __post_init__(self):
        size = self.size
        if not self.lower:
            self.lower = [Fraction(0)] * size
        if not self.upper:
            self.upper = [Fraction(1)] * size
        if not self.integer:
            self.integer = [True] * size
        if not (len(self.lower) == len(self.upper) == len(self.integer) == size):
            raise ValueError("bounds and integrality flags must cover every variable")
        for row in self.rows:
            self._check(row)

    @property
    def size(self) -> int:
        return variable_count(self.graph, self.space)

    def _check(self, row: LinearInequality):
        if row.space != self.space:
            raise ValueError(f"row {row.label!r} lives in {row.space} space, system is {self.space}")
        if row.coeffs and max(row.coeffs) >= self.size:
            raise ValueError(f"row {row.label!r} uses a variable outside the system")

    def add(self, row: LinearInequality) -> None:
        self._check(row)
        self.rows.append(row)

    def extend(self, rows: Iterable[LinearInequality]) -> None:
        for row in rows:
            self.add(row)

    def bound_rows(self) -> list[LinearInequality]:
        """The box as explicit rows: ``-v_i <= -lo_i`` and ``v_i <= hi_i``."""
        out = []
        for i in range(self.size):
            if self.lower[i] is not None:
                out.append(LinearInequality(self.space, {i: -1}, -self.lower[i], f"lb_{i}"))
            if self.upper[i] is not None:
                out.append(LinearInequality(self.space, {i: 1}, self.upper[i], f"ub_{i}"))
        return out

    def all_rows(self) -> list[LinearInequality]:
        return list(self.rows) + self.bound_rows()

    def contains(self, point: Sequence) -> bool:
        if len(point) != self.size:
            raise ValueError(f"point has {len(point)} coordinates, system has {self.size} variables")
        return all(row.is_satisfied(point) for row in self.all_rows())

    def dense(self) -> tuple[list[list[Fraction]], list[Fraction]]:
        return [r.dense(self.size) for r in self.rows], [r.rhs for r in self.rows]

    def copy(self) -> "LinearSystem":
        return LinearSystem(self.graph, self.space, list(self.rows), list(self.lower),
                            list(self.upper), list(self.integer), self.name)

    def labels(self) -> list[str]:
        return [r.label for r in self.rows]

    def to_lp_text(self, objective: Sequence | None = None) -> str:
        """CPLEX LP format, maximising ``objective`` (all-ones over x by default)."""
        g = self.graph
        if objective is None:
            objective = [1] * g.n + [0] * (self.size - g.n)
        obj = LinearInequality(self.space, {i: c for i, c in enumerate(objective)}, 0)
        lines = [f"\\ {self.name or 'system'}", "Maximize", " obj: " + obj.to_text(g).rsplit(" <=", 1)[0],
                 "Subject To"]
        for k, row in enumerate(self.rows):
            label = row.label or f"r{k}"
            lines.append(f" {label}: {row.to_text(g)}")
        lines.append("Bounds")
        for i in range(self.size):
            lines.append(f" {_num(self.lower[i])} <= {variable_name(g, i)} <= {_num(self.upper[i])}")
        ints = [variable_name(g, i) for i in range(self.size) if self.integer[i]]
        if ints:
            lines.append("General")
            lines.append(" " + " ".join(ints))
        lines.append("End")
        return "\n".join(lines) + "\n"


def _num(value: Fraction) -> str:
    # LP text has no rational literals
    value = Fraction(value)
    return str(value.numerator) if value.denominator == 1 else repr(float(value))
