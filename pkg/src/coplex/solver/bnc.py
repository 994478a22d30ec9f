"""Best-bound branch-and-cut over a pluggable LP backend."""

from __future__ import annotations

import heapq
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import numpy as np

from ..errors import LPError
from ..polyhedra.linear import LinearInequality, LinearSystem
from ..polyhedra.rational_lp import INFEASIBLE
from .lp import FLOAT, RATIONAL, make_backend

OPTIMAL = "optimal"
TIME_LIMIT = "time_limit"
INFEASIBLE_STATUS = "infeasible"

# A separator maps an LP point (over the system's variables) to candidate cuts.
Separator = Callable[[Sequence], Iterable]


@dataclass
class BnCConfig:
    time_limit: float | None = None
    cut_rounds: int = 5
    threshold: float = 1e-6
    integrality_tolerance: float = 1e-6
    arithmetic: str = FLOAT
    node_limit: int | None = None


@dataclass
class SolveStats:
    nodes: int = 0
    cuts: int = 0
    root_lp_value: object = None  # after the root cut rounds
    root_lp_initial: object = None  # before any cut
    incumbent_value: object = None
    best_bound: object = None
    gap: float = 0.0
    root_gap: float | None = None
    wall_time: float = 0.0
    status: str = OPTIMAL

    def as_dict(self) -> dict:
        return {k: (float(v) if isinstance(v, Fraction) else v) for k, v in self.__dict__.items()}


@dataclass
class BnCResult:
    status: str
    value: object
    x: tuple | None
    stats: SolveStats = field(default_factory=SolveStats)


def relative_gap(bound, incumbent) -> float:
    """``(bound - incumbent) / max(1, |incumbent|)``, clipped at 0."""
    if bound is None:
        return 0.0
    if incumbent is None:
        return math.inf
    return max(0.0, float(bound - incumbent) / max(1.0, abs(float(incumbent))))


class _RowStore:
    """Dense copy of the active rows, rebuilt lazily for the float backend."""

    def __init__(self, size: int, arithmetic: str):
        self.size = size
        self.arithmetic = arithmetic
        self.rows: list[list] = []
        self.rhs: list = []
        self.keys: set = set()
        self._cache = None

    def add(self, ineq: LinearInequality) -> bool:
        key = ineq.key()
        if key in self.keys:
            return False
        self.keys.add(key)
        dense = ineq.dense(self.size)
        if self.arithmetic == FLOAT:
            self.rows.append([float(v) for v in dense])
            self.rhs.append(float(ineq.rhs))
        else:
            self.rows.append(dense)
            self.rhs.append(ineq.rhs)
        self._cache = None
        return True

    def matrices(self):
        if self.arithmetic != FLOAT:
            return self.rows, self.rhs
        if self._cache is None:
            if self.rows:
                self._cache = (np.array(self.rows, dtype=float), np.array(self.rhs, dtype=float))
            else:
                self._cache = (np.zeros((0, self.size)), np.zeros(0))
        return self._cache


def _cut_inequality(item) -> LinearInequality:
    return item if isinstance(item, LinearInequality) else item.inequality


def branch_and_cut(system: LinearSystem, objective: Sequence, separators: Sequence[Separator] = (),
                   config: BnCConfig | None = None, incumbent: tuple | None = None,
                   fixings: dict[int, tuple] | None = None, backend=None) -> BnCResult:
    """Maximise ``objective`` over the integer points of ``system``.

    ``incumbent`` is an optional ``(value, point)`` seed; its value also acts
    as a cutoff.  ``fixings`` maps variable indices to ``(lo, hi)`` pairs that
    hold at every node.  Each node solves its LP, then runs up to
    ``cut_rounds`` rounds of separation; cuts are global and deduplicated.
    Branching picks the most fractional integer variable, lowest index first.
    """
    config = config or BnCConfig()
    backend = backend or make_backend(config.arithmetic)
    exact = config.arithmetic == RATIONAL
    num = Fraction if exact else float
    tol = 0 if exact else config.integrality_tolerance
    start = time.perf_counter()
    deadline = None if config.time_limit is None else start + config.time_limit
    size = system.size
    c = [num(v) for v in objective]
    if len(c) != size:
        raise ValueError(f"objective has {len(c)} entries, system has {size} variables")
    integral_objective = all(float(v).is_integer() for v in c) and all(system.integer)

    store = _RowStore(size, config.arithmetic)
    for row in system.rows:
        store.add(row)
    base_lo = [num(v) for v in system.lower]
    base_hi = [num(v) for v in system.upper]
    for j, (lo, hi) in (fixings or {}).items():
        base_lo[j] = max(base_lo[j], num(lo))
        base_hi[j] = min(base_hi[j], num(hi))

    stats = SolveStats()
    best_value = None if incumbent is None else num(incumbent[0])
    best_x = None if incumbent is None or incumbent[1] is None else tuple(incumbent[1])

    def dominated(bound) -> bool:
        if best_value is None or bound == math.inf:
            return False
        if integral_objective:
            return math.floor(float(bound) + 1e-6) <= best_value
        return bound <= best_value + (0 if exact else 1e-9)

    def fractional(x):
        best_j, best_f = None, tol
        for j in range(size):
            if not system.integer[j]:
                continue
            f = x[j] - math.floor(x[j])
            dist = min(f, 1 - f)
            if dist > best_f:
                best_j, best_f = j, dist
        return best_j

    def solve_node(lo, hi):
        rows, rhs = store.matrices()
        res = backend.solve(c, rows, rhs, lo, hi)
        if res.status == INFEASIBLE:
            return None
        return res

    heap: list[tuple] = []
    counter = 0
    # the box alone bounds the objective, so a timed-out root still reports a finite gap
    root_bound = sum((max(ci * l, ci * h) for ci, l, h in zip(c, base_lo, base_hi)), num(0))
    heapq.heappush(heap, (-root_bound, counter, base_lo, base_hi))
    open_bound = None
    status = OPTIMAL

    while heap:
        neg_bound, _, lo, hi = heap[0]
        if dominated(-neg_bound):
            heapq.heappop(heap)
            continue
        if (deadline is not None and time.perf_counter() > deadline) or \
                (config.node_limit is not None and stats.nodes >= config.node_limit):
            status = TIME_LIMIT
            break
        heapq.heappop(heap)
        stats.nodes += 1
        is_root = stats.nodes == 1
        res = solve_node(lo, hi)
        if res is None:
            if is_root:
                stats.root_lp_value = stats.root_lp_initial = None
            continue
        if is_root:
            stats.root_lp_initial = res.value
        for _ in range(config.cut_rounds):
            if not separators or dominated(res.value):
                break
            added = 0
            for sep in separators:
                for item in sep(res.x) or ():
                    if item is None:
                        continue
                    if store.add(_cut_inequality(item)):
                        added += 1
            if not added:
                break
            stats.cuts += added
            res = solve_node(lo, hi)
            if res is None:
                break
        if res is None:
            continue
        if is_root:
            stats.root_lp_value = res.value
        if dominated(res.value):
            continue
        j = fractional(res.x)
        if j is None:
            point = tuple(num(round(v)) if system.integer[i] else v for i, v in enumerate(res.x))
            value = sum((ci * xi for ci, xi in zip(c, point)), num(0))
            if exact or system.contains([Fraction(v) for v in point]):
                if best_value is None or value > best_value:
                    best_value, best_x = value, point
                continue
            raise LPError("rounded LP solution violates the formulation; numerical trouble")
        down_hi = list(hi)
        down_hi[j] = num(math.floor(res.x[j]))
        up_lo = list(lo)
        up_lo[j] = num(math.ceil(res.x[j]))
        for child_lo, child_hi in ((lo, down_hi), (up_lo, hi)):
            counter += 1
            heapq.heappush(heap, (-res.value, counter, child_lo, child_hi))

    if status == TIME_LIMIT:
        live = [-b for b, *_ in heap if not dominated(-b)]
        open_bound = max(live) if live else None
    bound = best_value if open_bound is None else (
        open_bound if best_value is None else max(open_bound, best_value))
    stats.incumbent_value = best_value
    stats.best_bound = bound
    stats.status = status if best_value is not None or status == TIME_LIMIT else INFEASIBLE_STATUS
    stats.gap = relative_gap(bound, best_value) if bound is not None else math.inf
    if stats.root_lp_value is not None and best_value is not None:
        stats.root_gap = relative_gap(stats.root_lp_value, best_value)
    stats.wall_time = time.perf_counter() - start
    return BnCResult(stats.status, best_value, best_x, stats)
