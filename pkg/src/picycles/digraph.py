"""Directed multigraphs with integer edge multiplicities.

Vertices are ``0..n-1``. Self-loops and parallel edges are allowed; parallel
edges are stored as one entry ``(u, v) -> mult``. An individual edge instance
is addressed as ``(u, v, i)`` with ``0 <= i < mult(u, v)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Mapping


class GraphError(ValueError):
    pass


class CapExceeded(RuntimeError):
    """Raised when an exhaustive enumeration would exceed its configured cap."""


@dataclass(frozen=True)
class Digraph:
    n: int
    mult: Mapping[tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self):
        if self.n < 0:
            raise GraphError("negative vertex count")
        clean = {}
        for (u, v), m in self.mult.items():
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={self.n}")
            if m < 0:
                raise GraphError(f"negative multiplicity on ({u}, {v})")
            if m:
                clean[(u, v)] = m
        object.__setattr__(self, "mult", dict(sorted(clean.items())))

    @classmethod
    def from_edges(cls, n: int, edges) -> Digraph:
        """Build from ``(u, v)`` or ``(u, v, mult)`` tuples; repeats accumulate."""
        mult: dict[tuple[int, int], int] = {}
        for e in edges:
            u, v = e[0], e[1]
            m = e[2] if len(e) > 2 else 1
            mult[(u, v)] = mult.get((u, v), 0) + m
        return cls(n, mult)

    def __hash__(self):
        return hash((self.n, tuple(self.mult.items())))

    def __eq__(self, other):
        if not isinstance(other, Digraph):
            return NotImplemented
        return self.n == other.n and self.mult == other.mult

    def m(self, u: int, v: int) -> int:
        return self.mult.get((u, v), 0)

    def edges(self) -> list[tuple[int, int, int]]:
        return [(u, v, m) for (u, v), m in self.mult.items()]

    def edge_instances(self) -> Iterator[tuple[int, int, int]]:
        for (u, v), m in self.mult.items():
            for i in range(m):
                yield (u, v, i)

    def out_neighbors(self, u: int) -> list[int]:
        return [v for (a, v) in self.mult if a == u]

    def in_neighbors(self, v: int) -> list[int]:
        return [u for (u, b) in self.mult if b == v]

    def outdegree(self, u: int) -> int:
        return sum(m for (a, _), m in self.mult.items() if a == u)

    def indegree(self, v: int) -> int:
        return sum(m for (_, b), m in self.mult.items() if b == v)

    def num_edges(self) -> int:
        return sum(self.mult.values())

    def is_simple(self) -> bool:
        """No multi-edges (self-loops of multiplicity 1 are allowed)."""
        return all(m == 1 for m in self.mult.values())

    def has_loops(self) -> bool:
        return any(u == v for (u, v) in self.mult)

    def adjacency(self) -> list[list[tuple[int, int]]]:
        """Per-vertex list of ``(target, mult)`` pairs."""
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
        for (u, v), m in self.mult.items():
            adj[u].append((v, m))
        return adj

    def induced(self, keep) -> Digraph:
        """Induced subgraph on ``keep``, relabelled in increasing order."""
        keep = sorted(set(keep))
        idx = {v: i for i, v in enumerate(keep)}
        return Digraph(len(keep), {(idx[u], idx[v]): m for (u, v), m in self.mult.items()
                                   if u in idx and v in idx})

    def delete_edge(self, u: int, v: int, count: int | None = None) -> Digraph:
        """Remove the whole multi-edge ``(u, v)``, or ``count`` copies of it."""
        if self.m(u, v) == 0:
            raise GraphError(f"edge ({u}, {v}) absent")
        mult = dict(self.mult)
        mult[(u, v)] = 0 if count is None else max(0, mult[(u, v)] - count)
        return Digraph(self.n, mult)

    def relabel(self, perm) -> Digraph:
        """Apply the vertex map ``v -> perm[v]``."""
        return Digraph(self.n, {(perm[u], perm[v]): m for (u, v), m in self.mult.items()})

    def disjoint_union(self, other: Digraph) -> Digraph:
        mult = dict(self.mult)
        for (u, v), m in other.mult.items():
            mult[(u + self.n, v + self.n)] = m
        return Digraph(self.n + other.n, mult)

    def __repr__(self):
        return f"Digraph(n={self.n}, edges={self.edges()})"


def skeleton(g: Digraph) -> Digraph:
    return Digraph(g.n, {e: 1 for e in g.mult})


def reduce_full_multiplicity(g: Digraph, k: int) -> Digraph:
    """Replace every multi-edge of multiplicity exactly ``k`` by a single edge."""
    return Digraph(g.n, {e: (1 if m == k else m) for e, m in g.mult.items()})


def contract_edge(g: Digraph, u: int, v: int) -> Digraph:
    """Contract the multi-edge ``(u, v)`` into a single vertex.

    The merged vertex takes id ``min(u, v)`` and ids above ``max(u, v)`` shift
    down by one. Incidences of ``u`` and ``v`` to the same outside vertex add
    their multiplicities. The merged vertex carries a self-loop of multiplicity
    ``mult(v, u) + mult(u, u) + mult(v, v)``; the contracted edge itself is
    dropped.
    """
    if u == v:
        raise GraphError("cannot contract a self-loop")
    if g.m(u, v) == 0:
        raise GraphError(f"edge ({u}, {v}) absent")
    w, gone = min(u, v), max(u, v)

    def image(x):
        if x in (u, v):
            return w
        return x - 1 if x > gone else x

    mult: dict[tuple[int, int], int] = {}
    for (a, b), m in g.mult.items():
        if a in (u, v) and b in (u, v):
            if (a, b) == (u, v):
                continue
            key = (w, w)
        else:
            key = (image(a), image(b))
        mult[key] = mult.get(key, 0) + m
    return Digraph(g.n - 1, mult)


def _require_simple_edge(g: Digraph, u: int, v: int):
    if not g.is_simple():
        raise GraphError("contractibility is defined for simple digraphs only")
    if u == v or g.m(u, v) == 0:
        raise GraphError(f"({u}, {v}) is not a non-loop edge of g")


def is_in_contractible(g: Digraph, u: int, v: int) -> bool:
    _require_simple_edge(g, u, v)
    return not any(g.m(x, u) and g.m(x, v) for x in range(g.n) if x not in (u, v))


def is_out_contractible(g: Digraph, u: int, v: int) -> bool:
    _require_simple_edge(g, u, v)
    return not any(g.m(u, x) and g.m(v, x) for x in range(g.n) if x not in (u, v))


def is_contractible(g: Digraph, u: int, v: int) -> bool:
    return is_in_contractible(g, u, v) and is_out_contractible(g, u, v)


def not_in_contractible_edges(g: Digraph) -> list[tuple[int, int]]:
    return [(u, v) for (u, v) in g.mult if u != v and not is_in_contractible(g, u, v)]


# --- graph classes -----------------------------------------------------------

@dataclass(frozen=True)
class GraphClass:
    """One of the three families: ``simple``, ``multi`` or ``outdegree``."""

    kind: str
    n: int
    k: int

    def __post_init__(self):
        if self.kind not in ("simple", "multi", "outdegree"):
            raise ValueError(f"unknown graph class {self.kind!r}")
        if self.n < 0 or self.k < 2:
            raise ValueError("need n >= 0 and k >= 2")


def Simple(n, k):
    return GraphClass("simple", n, k)


def Multi(n, k):
    return GraphClass("multi", n, k)


def OutdegreeK(n, k):
    return GraphClass("outdegree", n, k)


def class_contains(c: GraphClass, g: Digraph) -> bool:
    if g.n != c.n:
        return False
    outdeg = [0] * g.n
    for (u, v), m in g.mult.items():
        outdeg[u] += m
    if c.kind == "simple":
        return g.is_simple() and all(d <= c.k for d in outdeg)
    if any(d != c.k for d in outdeg):
        return False
    if c.kind == "multi":
        return all(m <= c.k - 1 for (u, v), m in g.mult.items() if u != v)
    return True


def _out_choices(c: GraphClass) -> list[dict[int, int]]:
    """Legal out-multisets for one vertex, as ``{target_offset: mult}`` with 0 = self.

    Targets are expressed relative to the vertex so one list serves all vertices.
    """
    n, k = c.n, c.k
    choices = []
    if c.kind == "simple":
        for size in range(k + 1):
            for combo in itertools.combinations(range(n), size):
                choices.append({t: 1 for t in combo})
    else:
        for combo in itertools.combinations_with_replacement(range(n), k):
            ms: dict[int, int] = {}
            for t in combo:
                ms[t] = ms.get(t, 0) + 1
            if c.kind == "multi" and any(m > k - 1 for t, m in ms.items() if t != 0):
                continue
            choices.append(ms)
    return choices


def class_size(c: GraphClass) -> int:
    return len(_out_choices(c)) ** c.n if c.n else 1


def enumerate_class(c: GraphClass, cap: int = 10**6) -> Iterator[Digraph]:
    """Yield every member of ``c`` exactly once.

    Each vertex independently picks an out-multiset; choices are iterated in
    lexicographic order of the per-vertex choice lists.
    """
    total = class_size(c)
    if total > cap:
        raise CapExceeded(f"{c} has {total} members, cap is {cap}")
    if c.n == 0:
        yield Digraph(0, {})
        return
    choices = _out_choices(c)
    n = c.n
    for pick in itertools.product(choices, repeat=n):
        mult = {}
        for u, ms in enumerate(pick):
            for t, m in ms.items():
                mult[(u, (u + t) % n)] = m
        yield Digraph(n, mult)


# --- forbidden subgraphs -----------------------------------------------------

# v1, v2, v3 -> 0, 1, 2
H1 = Digraph.from_edges(3, [(1, 0), (2, 0), (1, 2), (2, 1)])
H2 = Digraph.from_edges(3, [(0, 1), (0, 2), (1, 2), (2, 1)])
FORBIDDEN = {"H1": H1, "H2": H2}


def find_subgraph(g: Digraph, h: Digraph) -> dict[int, int] | None:
    """Injective vertex map ``h -> skeleton(g)`` carrying every edge of ``h``, or None."""
    pattern = list(h.mult)
    for image in itertools.permutations(range(g.n), h.n):
        if all((image[a], image[b]) in g.mult for a, b in pattern):
            return dict(enumerate(image))
    return None


def find_forbidden_subgraph(g: Digraph, h: str | Digraph) -> dict[int, int] | None:
    pattern = FORBIDDEN[h] if isinstance(h, str) else h
    return find_subgraph(skeleton(g), pattern)


# --- structure helpers -------------------------------------------------------

def weak_components(g: Digraph) -> list[list[int]]:
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (u, v) in g.mult:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
    groups: dict[int, list[int]] = {}
    for v in range(g.n):
        groups.setdefault(find(v), []).append(v)
    return sorted(groups.values())


def is_isomorphic(g: Digraph, h: Digraph) -> bool:
    """Brute-force permutation search; fine for n <= 8."""
    if g.n != h.n or sorted(g.mult.values()) != sorted(h.mult.values()):
        return False
    sig = lambda x, v: (x.outdegree(v), x.indegree(v), x.m(v, v))
    gs = [sig(g, v) for v in range(g.n)]
    hs = [sig(h, v) for v in range(h.n)]
    if sorted(gs) != sorted(hs):
        return False
    for perm in itertools.permutations(range(g.n)):
        if any(gs[v] != hs[perm[v]] for v in range(g.n)):
            continue
        if g.relabel(perm) == h:
            return True
    return False


def enumerate_two_regular_simple(n: int) -> Iterator[Digraph]:
    """All loopless simple digraphs on ``n`` labelled vertices with in- and outdegree 2."""
    indeg = [0] * n
    pairs = [list(itertools.combinations([x for x in range(n) if x != u], 2)) for u in range(n)]
    chosen: list[tuple[int, int]] = []

    def rec(u):
        if u == n:
            yield Digraph.from_edges(n, [(a, b) for a, pr in enumerate(chosen) for b in pr])
            return
        for x, y in pairs[u]:
            if indeg[x] < 2 and indeg[y] < 2:
                indeg[x] += 1
                indeg[y] += 1
                chosen.append((x, y))
                yield from rec(u + 1)
                chosen.pop()
                indeg[x] -= 1
                indeg[y] -= 1

    yield from rec(0)
