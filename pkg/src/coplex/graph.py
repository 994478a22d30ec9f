"""Simple undirected graphs, instance I/O and structural predicates.

Vertices are the integers ``0..n-1``.  Edges are stored as ``(u, v)`` pairs with
``u < v`` and receive identifiers in lexicographic order, so edge ``i`` is
``graph.edges[i]``.  Graphs are immutable once built.
"""

from __future__ import annotations

import random
from collections import deque
from itertools import combinations
from typing import Iterable, Iterator, NamedTuple, Sequence

from .errors import GraphParseError, InstanceTooLarge

PERFECT_CAP = 14


class Graph:
    """Immutable simple graph on vertices ``0..n-1``."""

    __slots__ = ("_n", "_edges", "_eid", "_adj", "_nbr", "_masks", "_hash")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        normalized = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop on vertex {u}")
            normalized.add((u, v) if u < v else (v, u))
        self._n = n
        self._edges = tuple(sorted(normalized))
        self._eid = {e: i for i, e in enumerate(self._edges)}
        adj = [[] for _ in range(n)]
        for u, v in self._edges:
            adj[u].append(v)
            adj[v].append(u)
        self._adj = tuple(tuple(sorted(a)) for a in adj)
        self._nbr = tuple(frozenset(a) for a in adj)
        masks = [0] * n
        for u, v in self._edges:
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        self._masks = tuple(masks)
        self._hash = None

    # -- basic accessors -------------------------------------------------
    @property
    def n(self) -> int:
        return self._n

    @property
    def m(self) -> int:
        return len(self._edges)

    @property
    def vertices(self) -> range:
        return range(self._n)

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return self._edges

    @property
    def masks(self) -> tuple[int, ...]:
        """Adjacency bitmasks, bit ``v`` of ``masks[u]`` set iff ``uv`` is an edge."""
        return self._masks

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def neighbor_set(self, v: int) -> frozenset[int]:
        return self._nbr[v]

    def closed_neighborhood(self, v: int) -> frozenset[int]:
        return self._nbr[v] | {v}

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._nbr[u]

    def edge_id(self, u: int, v: int) -> int:
        key = (u, v) if u < v else (v, u)
        try:
            return self._eid[key]
        except KeyError:
            raise KeyError(f"{key} is not an edge") from None

    def edge(self, e: int) -> tuple[int, int]:
        return self._edges[e]

    def incident_edges(self, v: int) -> tuple[int, ...]:
        """Edge ids of delta(v), sorted."""
        return tuple(sorted(self._eid[(min(v, u), max(v, u))] for u in self._adj[v]))

    def edges_within(self, vertices: Iterable[int]) -> tuple[int, ...]:
        """Edge ids of E(W)."""
        inside = set(vertices)
        return tuple(i for i, (u, v) in enumerate(self._edges) if u in inside and v in inside)

    def cut_edges(self, vertices: Iterable[int]) -> tuple[int, ...]:
        """Edge ids of delta(W): edges with exactly one endpoint in W."""
        inside = set(vertices)
        return tuple(i for i, (u, v) in enumerate(self._edges) if (u in inside) != (v in inside))

    def edge_vertices(self, edge_ids: Iterable[int]) -> tuple[int, ...]:
        """V(F): endpoints of the given edges."""
        out = set()
        for e in edge_ids:
            out.update(self._edges[e])
        return tuple(sorted(out))

    def with_edge(self, u: int, v: int) -> "Graph":
        return Graph(self._n, self._edges + ((u, v),))

    def mask_of(self, vertices: Iterable[int]) -> int:
        mask = 0
        for v in vertices:
            mask |= 1 << v
        return mask

    def density(self) -> float:
        if self._n < 2:
            return 0.0
        return 2 * self.m / (self._n * (self._n - 1))

    # -- dunder ----------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._edges == other._edges

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._n, self._edges))
        return self._hash

    def __repr__(self):
        return f"Graph(n={self._n}, edges={list(self._edges)})"


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------

def empty_graph(n: int) -> Graph:
    return Graph(n)


def complete_graph(n: int) -> Graph:
    return Graph(n, combinations(range(n), 2))


def path_graph(n: int) -> Graph:
    return Graph(n, ((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(leaves: int) -> Graph:
    """K_{1,leaves} with centre 0 and leaves 1..leaves."""
    return Graph(leaves + 1, ((0, i) for i in range(1, leaves + 1)))


def generate_er(n: int, p: float, seed: int) -> Graph:
    """Erdos-Renyi G(n, p) drawn with ``random.Random(seed)`` (Mersenne Twister).

    Pairs are visited in lexicographic order, one uniform draw per pair.
    """
    if not 0 <= p <= 1:
        raise ValueError("p must lie in [0, 1]")
    if n < 0:
        raise ValueError("n must be non-negative")
    rng = random.Random(seed)
    return Graph(n, [(u, v) for u, v in combinations(range(n), 2) if rng.random() < p])


def random_tree(n: int, seed: int) -> Graph:
    """Uniform random attachment tree: vertex i joins a random earlier vertex."""
    rng = random.Random(seed)
    return Graph(n, [(rng.randrange(i), i) for i in range(1, n)])


def random_chordal(n: int, seed: int, density: float = 0.5) -> Graph:
    """Random chordal graph built by reverse perfect elimination.

    Each new vertex is joined to a random subset of one maximal clique of the
    graph built so far, which keeps the graph chordal.
    """
    rng = random.Random(seed)
    edges: list[tuple[int, int]] = []
    for v in range(1, n):
        g = Graph(v, edges)
        cliques = maximal_cliques(g)
        clique = rng.choice(cliques)
        chosen = [u for u in clique if rng.random() < density]
        if not chosen:
            chosen = [rng.choice(clique)]
        edges.extend((u, v) for u in chosen)
    return Graph(n, edges)


# ---------------------------------------------------------------------------
# instance I/O
# ---------------------------------------------------------------------------

def parse_dimacs_col(text: str) -> Graph:
    """Parse the DIMACS colouring format (``p edge n m`` / ``e u v``, 1-based)."""
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise GraphParseError("duplicate problem line", lineno)
            if len(parts) != 4 or parts[1] not in ("edge", "col"):
                raise GraphParseError(f"malformed problem line {line!r}", lineno)
            try:
                n, _m = int(parts[2]), int(parts[3])
            except ValueError:
                raise GraphParseError(f"malformed problem line {line!r}", lineno) from None
            if n < 0 or _m < 0:
                raise GraphParseError("negative size in problem line", lineno)
        elif parts[0] == "e":
            if n is None:
                raise GraphParseError("edge line before problem line", lineno)
            if len(parts) != 3:
                raise GraphParseError(f"malformed edge line {line!r}", lineno)
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise GraphParseError(f"malformed edge line {line!r}", lineno) from None
            if not (1 <= u <= n and 1 <= v <= n):
                raise GraphParseError(f"vertex index out of range in {line!r}", lineno)
            if u == v:
                raise GraphParseError(f"self-loop on vertex {u}", lineno)
            edges.append((u - 1, v - 1))
        else:
            raise GraphParseError(f"unknown line type {parts[0]!r}", lineno)
    if n is None:
        raise GraphParseError("missing problem line")
    return Graph(n, edges)


def parse_metis(text: str) -> Graph:
    """Parse the unweighted METIS adjacency format used by the 10th DIMACS challenge."""
    lines = text.split("\n")
    idx = 0
    header = None
    while idx < len(lines):
        line = lines[idx].strip()
        idx += 1
        if line and not line.startswith("%"):
            header = (idx, line.split())
            break
    if header is None:
        raise GraphParseError("missing header line")
    hline, parts = header
    if len(parts) not in (2, 3):
        raise GraphParseError("header must be 'n m' (unweighted)", hline)
    try:
        n, m = int(parts[0]), int(parts[1])
        fmt = int(parts[2]) if len(parts) == 3 else 0
    except ValueError:
        raise GraphParseError("malformed header", hline) from None
    if fmt != 0:
        raise GraphParseError("weighted METIS variants are not supported", hline)
    if n < 0 or m < 0:
        raise GraphParseError("negative size in header", hline)

    listed: list[set[int]] = []
    line_of: list[int] = []
    while len(listed) < n:
        if idx < len(lines):
            raw = lines[idx]
            idx += 1
            if raw.strip().startswith("%"):
                continue
            lineno = idx
        else:
            raw, lineno = "", idx + 1
        nbrs = set()
        for tok in raw.split():
            try:
                u = int(tok)
            except ValueError:
                raise GraphParseError(f"non-integer neighbour {tok!r}", lineno) from None
            if not 1 <= u <= n:
                raise GraphParseError(f"neighbour {u} out of range", lineno)
            if u == len(listed) + 1:
                raise GraphParseError(f"self-loop on vertex {u}", lineno)
            nbrs.add(u - 1)
        listed.append(nbrs)
        line_of.append(lineno)
    for tail in lines[idx:]:
        if tail.strip() and not tail.strip().startswith("%"):
            raise GraphParseError("more adjacency lines than vertices", idx + 1)

    edges = set()
    for v, nbrs in enumerate(listed):
        for u in nbrs:
            if v not in listed[u]:
                raise GraphParseError(
                    f"asymmetric adjacency: {v + 1} lists {u + 1} but not conversely", line_of[u]
                )
            edges.add((min(u, v), max(u, v)))
    if len(edges) != m:
        raise GraphParseError(f"header announces {m} edges, found {len(edges)}", hline)
    return Graph(n, edges)


def to_dimacs_col(graph: Graph, comments: Sequence[str] = ()) -> str:
    out = [f"c {c}" for c in comments]
    out.append(f"p edge {graph.n} {graph.m}")
    out.extend(f"e {u + 1} {v + 1}" for u, v in graph.edges)
    return "\n".join(out) + "\n"


def read_graph(path) -> Graph:
    """Read a ``.col`` (DIMACS) or ``.graph``/``.metis`` file."""
    from pathlib import Path

    p = Path(path)
    text = p.read_text()
    if p.suffix in (".graph", ".metis"):
        return parse_metis(text)
    return parse_dimacs_col(text)


# ---------------------------------------------------------------------------
# graph operations
# ---------------------------------------------------------------------------

def complement(graph: Graph) -> Graph:
    return Graph(graph.n, [(u, v) for u, v in combinations(range(graph.n), 2)
                           if not graph.has_edge(u, v)])


def induced_subgraph(graph: Graph, vertices: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    """Return ``G[W]`` reindexed ``0..|W|-1`` and the new-to-old vertex map."""
    keep = tuple(sorted(set(vertices)))
    for v in keep:
        if not 0 <= v < graph.n:
            raise ValueError(f"vertex {v} out of range")
    new_id = {v: i for i, v in enumerate(keep)}
    edges = [(new_id[u], new_id[v]) for u, v in graph.edges if u in new_id and v in new_id]
    return Graph(len(keep), edges), keep


def contract_edges(graph: Graph, edge_ids: Iterable[int]) -> Graph:
    """G/F: merge the connected components of (V(F), F), drop loops and parallels.

    Merged vertices are renumbered by the smallest original vertex they contain.
    """
    return contract_edges_with_map(graph, edge_ids)[0]


def contract_edges_with_map(graph: Graph, edge_ids: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    parent = list(range(graph.n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for e in edge_ids:
        u, v = graph.edge(e)
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[max(ru, rv)] = min(ru, rv)
    roots = sorted({find(v) for v in range(graph.n)})
    new_id = {r: i for i, r in enumerate(roots)}
    vmap = tuple(new_id[find(v)] for v in range(graph.n))
    edges = {(min(vmap[u], vmap[v]), max(vmap[u], vmap[v]))
             for u, v in graph.edges if vmap[u] != vmap[v]}
    return Graph(len(roots), edges), vmap


def _as_edge(graph: Graph, item) -> tuple[int, int] | None:
    if isinstance(item, tuple):
        u, v = item
        if not graph.has_edge(u, v):
            raise ValueError(f"{item} is not an edge")
        return (min(u, v), max(u, v))
    return None


def adjacent_by_contraction(graph: Graph, a, b) -> bool:
    """Adjacency by contraction between a vertex and an edge, or two disjoint edges.

    Vertices are given as ints, edges as ``(u, v)`` tuples.  Pairs the notion does
    not cover (two vertices, an edge and one of its endpoints, two edges sharing
    an endpoint) raise ``ValueError``.
    """
    ea, eb = _as_edge(graph, a), _as_edge(graph, b)
    if ea is None and eb is None:
        raise ValueError("adjacency by contraction needs at least one edge")
    if ea is None or eb is None:
        w, (u, v) = (a, eb) if ea is None else (b, ea)
        if w in (u, v):
            raise ValueError("vertex is an endpoint of the edge (incident, not contraction)")
        return graph.has_edge(u, w) or graph.has_edge(v, w)
    if set(ea) & set(eb):
        raise ValueError("edges share an endpoint; use plain edge adjacency")
    return any(graph.has_edge(p, q) for p in ea for q in eb)


# ---------------------------------------------------------------------------
# cliques and chordality
# ---------------------------------------------------------------------------

def maximal_cliques(graph: Graph) -> list[tuple[int, ...]]:
    """All maximal cliques, each as a sorted tuple, in lexicographic order.

    Bron-Kerbosch with Tomita pivoting over bitmasks; ties in the pivot choice
    go to the smallest vertex.
    """
    masks = graph.masks
    out: list[tuple[int, ...]] = []

    def bits(mask):
        while mask:
            low = mask & -mask
            yield low.bit_length() - 1
            mask ^= low

    def expand(r: list[int], p: int, x: int):
        if not p and not x:
            out.append(tuple(sorted(r)))
            return
        pivot, best = -1, -1
        for u in bits(p | x):
            c = (p & masks[u]).bit_count()
            if c > best:
                pivot, best = u, c
        for v in bits(p & ~masks[pivot]):
            r.append(v)
            expand(r, p & masks[v], x & masks[v])
            r.pop()
            p &= ~(1 << v)
            x |= 1 << v

    if graph.n:
        expand([], (1 << graph.n) - 1, 0)
    out.sort()
    return out


class ChordalCertificate(NamedTuple):
    chordal: bool
    ordering: tuple[int, ...] | None  # perfect elimination ordering
    hole: tuple[int, ...] | None  # an induced cycle of length >= 4

    def __bool__(self):
        return self.chordal


def _mcs_order(graph: Graph) -> list[int]:
    """Maximum cardinality search; returns visit order (ties to smallest vertex)."""
    weight = [0] * graph.n
    done = [False] * graph.n
    order = []
    for _ in range(graph.n):
        v = max((u for u in range(graph.n) if not done[u]), key=lambda u: (weight[u], -u))
        done[v] = True
        order.append(v)
        for u in graph.neighbors(v):
            if not done[u]:
                weight[u] += 1
    return order


def _hole_through_vertex(graph: Graph) -> tuple[int, ...] | None:
    for v in range(graph.n):
        nbrs = graph.neighbors(v)
        for a, b in combinations(nbrs, 2):
            if graph.has_edge(a, b):
                continue
            blocked = set(nbrs) - {a, b}
            blocked.add(v)
            prev = {a: None}
            queue = deque([a])
            while queue:
                c = queue.popleft()
                if c == b:
                    break
                for d in graph.neighbors(c):
                    if d not in prev and d not in blocked:
                        prev[d] = c
                        queue.append(d)
            if b in prev:
                path = []
                c = b
                while c is not None:
                    path.append(c)
                    c = prev[c]
                return (v,) + tuple(reversed(path))
    return None


def chordal_certificate(graph: Graph) -> ChordalCertificate:
    """Decide chordality, returning a perfect elimination ordering or a hole."""
    order = _mcs_order(graph)
    peo = list(reversed(order))
    position = {v: i for i, v in enumerate(peo)}
    ok = True
    for v in peo:
        later = [u for u in graph.neighbors(v) if position[u] > position[v]]
        if later:
            parent = min(later, key=position.__getitem__)
            if any(u != parent and not graph.has_edge(parent, u) for u in later):
                ok = False
                break
    if ok:
        return ChordalCertificate(True, tuple(peo), None)
    hole = _hole_through_vertex(graph)
    assert hole is not None, "MCS rejected a graph with no hole"
    return ChordalCertificate(False, None, hole)


def is_chordal(graph: Graph) -> bool:
    return chordal_certificate(graph).chordal


def is_connected(graph: Graph) -> bool:
    if graph.n == 0:
        return True
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for u in graph.neighbors(v):
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == graph.n


def is_tree(graph: Graph) -> bool:
    return graph.n >= 1 and graph.m == graph.n - 1 and is_connected(graph)


def hole_length(graph: Graph) -> int | None:
    """Length of G if G itself is a hole (induced cycle of length >= 4), else None."""
    if graph.n >= 4 and all(graph.degree(v) == 2 for v in graph.vertices) and is_connected(graph):
        return graph.n
    return None


is_hole = hole_length


def true_twin_pairs(graph: Graph) -> list[tuple[int, int]]:
    return [(u, v) for u, v in combinations(graph.vertices, 2)
            if graph.has_edge(u, v) and graph.closed_neighborhood(u) == graph.closed_neighborhood(v)]


def false_twin_pairs(graph: Graph) -> list[tuple[int, int]]:
    return [(u, v) for u, v in combinations(graph.vertices, 2)
            if not graph.has_edge(u, v) and graph.neighbor_set(u) == graph.neighbor_set(v)]


# ---------------------------------------------------------------------------
# induced cycles and perfectness (exhaustive, small graphs only)
# ---------------------------------------------------------------------------

def iter_holes(graph: Graph, min_length: int = 4) -> Iterator[tuple[int, ...]]:
    """Yield induced cycles of length >= ``min_length``, each starting at its smallest vertex.

    Every hole is produced twice, once per direction.
    """
    masks = graph.masks

    def search(path: list[int], pmask: int, forbidden: int):
        last = path[-1]
        cand = masks[last] & ~forbidden & ~pmask
        start = path[0]
        while cand:
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            if len(path) >= 2 and masks[v] >> start & 1:
                if len(path) >= 3 and len(path) + 1 >= min_length:
                    yield tuple(path) + (v,)
                continue
            yield from search(path + [v], pmask | low,
                              forbidden | (masks[last] if len(path) >= 2 else 0) | (1 << last))

    for s in range(graph.n):
        yield from search([s], 1 << s, (1 << s) - 1)


def find_hole(graph: Graph, parity: int | None = None, min_length: int = 4) -> tuple[int, ...] | None:
    """Return an induced cycle of length >= ``min_length`` (with the given parity) or None."""
    for hole in iter_holes(graph, min_length):
        if parity is None or len(hole) % 2 == parity:
            return hole
    return None


def find_odd_hole(graph: Graph) -> tuple[int, ...] | None:
    return find_hole(graph, parity=1, min_length=5)


def is_perfect_bruteforce(graph: Graph, cap: int = PERFECT_CAP) -> bool:
    """No odd hole in G and no odd hole in its complement (exhaustive search)."""
    if graph.n > cap:
        raise InstanceTooLarge(f"perfectness check capped at {cap} vertices, got {graph.n}")
    return find_odd_hole(graph) is None and find_odd_hole(complement(graph)) is None


def is_contraction_perfect_bruteforce(graph: Graph, cap: int = PERFECT_CAP) -> bool:
    """Perfect, and perfect after contracting any single edge."""
    if not is_perfect_bruteforce(graph, cap):
        return False
    return all(is_perfect_bruteforce(contract_edges(graph, [e]), cap) for e in range(graph.m))


def bounded_distance_set(graph: Graph, v: int, d: int) -> tuple[int, ...]:
    """Vertices at distance at most ``d`` from ``v`` (``v`` included)."""
    if not 0 <= v < graph.n:
        raise ValueError(f"vertex {v} out of range")
    if d < 0:
        raise ValueError("distance bound must be non-negative")
    dist = {v: 0}
    queue = deque([v])
    while queue:
        u = queue.popleft()
        if dist[u] == d:
            continue
        for w in graph.neighbors(u):
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    return tuple(sorted(dist))
