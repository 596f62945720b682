"""Exact counting of cycles, simple paths and path-cycles in multigraphs.

Counts are multiplicity weighted: the enumerators walk vertex-simple
structures once and multiply the multiplicities of the edges used, so parallel
edges never have to be materialised unless objects are listed explicitly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator

from .digraph import CapExceeded, Digraph, reduce_full_multiplicity, skeleton

DEFAULT_CAP = 10**9

Edge = tuple[int, int, int]


@dataclass(frozen=True)
class Cycle:
    vertices: tuple[int, ...]   # rotation starts at the minimum vertex
    edges: tuple[Edge, ...]     # edges[i] leaves vertices[i]


@dataclass(frozen=True)
class PathCycle:
    """A rooted lasso: simple path ``vertices`` plus ``closing_edge`` back into it."""

    vertices: tuple[int, ...]
    path_edges: tuple[Edge, ...]
    closing_edge: Edge

    @property
    def root(self) -> int:
        return self.vertices[0]

    @property
    def entry(self) -> int:
        """Position (0-based) of the vertex the closing edge returns to."""
        return self.vertices.index(self.closing_edge[1])

    def is_cycle(self) -> bool:
        return self.entry == 0


class _Budget:
    def __init__(self, cap):
        self.cap = cap
        self.used = 0

    def tick(self):
        self.used += 1
        if self.used > self.cap:
            raise CapExceeded(f"enumeration exceeded cap of {self.cap} structures")


def vertex_cycles(g: Digraph, cap: int = DEFAULT_CAP) -> Iterator[tuple[tuple[int, ...], int]]:
    """Yield ``(vertices, weight)`` for every vertex-simple directed cycle.

    Each cycle is anchored at its minimum vertex, so it is produced exactly once.
    ``weight`` is the product of multiplicities along the cycle.
    """
    adj = g.adjacency()
    budget = _Budget(cap)
    path: list[int] = []
    on_path = [False] * g.n

    def dfs(s, u, w):
        for v, m in adj[u]:
            if v == s:
                if u != s:
                    budget.tick()
                    yield tuple(path), w * m
            elif v > s and not on_path[v]:
                path.append(v)
                on_path[v] = True
                yield from dfs(s, v, w * m)
                on_path[v] = False
                path.pop()

    for s in range(g.n):
        m = g.m(s, s)
        if m:
            budget.tick()
            yield (s,), m
        path.append(s)
        on_path[s] = True
        yield from dfs(s, s, 1)
        on_path[s] = False
        path.pop()


def _pairs(verts):
    return [(verts[i], verts[(i + 1) % len(verts)]) for i in range(len(verts))]


def count_cycles(g: Digraph, cap: int = DEFAULT_CAP) -> int:
    return sum(w for _, w in vertex_cycles(g, cap))


def count_cycles_through_vertex(g: Digraph, v: int, cap: int = DEFAULT_CAP) -> int:
    return sum(w for verts, w in vertex_cycles(g, cap) if v in verts)


def _normalise_edges(g: Digraph, edges) -> dict[tuple[int, int], int]:
    """Map each multi-edge to the number of its instances selected by ``edges``.

    Items are ``(u, v)`` (whole multi-edge) or ``(u, v, i)`` (one instance).
    """
    hit: dict[tuple[int, int], set] = {}
    for e in edges:
        u, v = e[0], e[1]
        m = g.m(u, v)
        if m == 0:
            raise ValueError(f"edge ({u}, {v}) absent")
        if len(e) == 2:
            hit.setdefault((u, v), set()).update(range(m))
        else:
            if not 0 <= e[2] < m:
                raise ValueError(f"edge instance {e} out of range")
            hit.setdefault((u, v), set()).add(e[2])
    return {p: len(s) for p, s in hit.items()}


def count_cycles_through_edges(g: Digraph, edges: Iterable, cap: int = DEFAULT_CAP) -> int:
    """Cycles using at least one of the given edges (instances or whole multi-edges)."""
    hit = _normalise_edges(g, edges)
    total = 0
    for verts, w in vertex_cycles(g, cap):
        avoid = 1
        for p in _pairs(verts):
            avoid *= g.m(*p) - hit.get(p, 0)
        total += w - avoid
    return total


def count_cycles_through_edge(g: Digraph, e, cap: int = DEFAULT_CAP) -> int:
    return count_cycles_through_edges(g, [e], cap)


def iter_cycles(g: Digraph, cap: int = DEFAULT_CAP) -> Iterator[Cycle]:
    """Every cycle with explicit edge instances (parallel edges give distinct cycles)."""
    for verts, _ in vertex_cycles(g, cap):
        pairs = _pairs(verts)
        for idx in itertools.product(*(range(g.m(*p)) for p in pairs)):
            yield Cycle(verts, tuple((u, v, i) for (u, v), i in zip(pairs, idx)))


# --- paths and path-cycles ---------------------------------------------------

def vertex_paths(g: Digraph, cap: int = DEFAULT_CAP) -> Iterator[tuple[tuple[int, ...], int]]:
    """Yield ``(vertices, weight)`` for every simple path, single vertices included."""
    adj = g.adjacency()
    budget = _Budget(cap)
    path: list[int] = []
    on_path = [False] * g.n

    def dfs(u, w):
        budget.tick()
        yield tuple(path), w
        for v, m in adj[u]:
            if not on_path[v]:
                path.append(v)
                on_path[v] = True
                yield from dfs(v, w * m)
                on_path[v] = False
                path.pop()

    for s in range(g.n):
        path.append(s)
        on_path[s] = True
        yield from dfs(s, 1)
        on_path[s] = False
        path.pop()


def count_paths(g: Digraph, cap: int = DEFAULT_CAP) -> int:
    return sum(w for _, w in vertex_paths(g, cap))


def count_paths_between(g: Digraph, s: int, t: int, cap: int = DEFAULT_CAP) -> int:
    if s == t:
        return 1
    return sum(w for verts, w in vertex_paths(g, cap) if verts[0] == s and verts[-1] == t)


def count_path_cycles(g: Digraph, rooted: bool = True, cap: int = DEFAULT_CAP) -> int:
    """Number of path-cycles.

    Rooted (default): a lasso is identified by its start vertex, vertex order and
    edge instances, so a pure cycle of length L is counted L times, once per root.
    With ``rooted=False`` pure cycles are counted once, i.e. path-cycles are
    treated as edge-set subgraphs.
    """
    total = 0
    for verts, w in vertex_paths(g, cap):
        last = verts[-1]
        total += w * sum(g.m(last, x) for x in verts)
    if rooted:
        return total
    pure = 0
    for verts, w in vertex_cycles(g, cap):
        pure += (len(verts) - 1) * w
    return total - pure


def iter_paths(g: Digraph, cap: int = DEFAULT_CAP) -> Iterator[tuple[tuple[int, ...], tuple[Edge, ...]]]:
    for verts, _ in vertex_paths(g, cap):
        pairs = list(zip(verts, verts[1:]))
        for idx in itertools.product(*(range(g.m(*p)) for p in pairs)):
            yield verts, tuple((u, v, i) for (u, v), i in zip(pairs, idx))


def iter_path_cycles(g: Digraph, cap: int = DEFAULT_CAP) -> Iterator[PathCycle]:
    for verts, path_edges in iter_paths(g, cap):
        last = verts[-1]
        for x in verts:
            for i in range(g.m(last, x)):
                yield PathCycle(verts, path_edges, (last, x, i))


# --- N1 / N2 -----------------------------------------------------------------

def _check_outdegree(g: Digraph, k: int | None) -> int:
    if g.n == 0:
        if k is None:
            raise ValueError("k is required for the empty graph")
        return k
    degs = {g.outdegree(u) for u in range(g.n)}
    if len(degs) != 1:
        raise ValueError(f"graph is not out-regular: outdegrees {sorted(degs)}")
    deg = degs.pop()
    if k is not None and deg != k:
        raise ValueError(f"graph has outdegree {deg}, expected {k}")
    return deg


def n1(g: Digraph, k: int | None = None, cap: int = DEFAULT_CAP) -> int:
    """Path-cycles after collapsing every multiplicity-k multi-edge to a single edge."""
    k = _check_outdegree(g, k)
    return count_path_cycles(reduce_full_multiplicity(g, k), cap=cap)


def n2(g: Digraph, k: int | None = None, cap: int = DEFAULT_CAP) -> int:
    """Path-cycles of the skeleton."""
    _check_outdegree(g, k)
    return count_path_cycles(skeleton(g), cap=cap)
