"""Extremal digraph families, their closed-form cycle counts, and brute-force maxima."""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .cycles import count_cycles
from .digraph import Digraph, GraphClass, enumerate_class
from .exact import QuadSurd


def _check_k(k):
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")


def alpha(k: int) -> QuadSurd:
    """Positive root of x^2 - (k-1)x - 1, as the exact surd (k-1 + sqrt(D))/2."""
    _check_k(k)
    d = (k - 1) ** 2 + 4
    return QuadSurd(Fraction(k - 1, 2), Fraction(1, 2), d)


def alpha_power(k: int, n: int) -> QuadSurd:
    return alpha(k) ** n


def ceil_alpha_power(k: int, n: int) -> int:
    return alpha_power(k, n).ceil()


@lru_cache(maxsize=None)
def s_seq(k: int, n: int) -> int:
    """S_0 = 1, S_1 = k-1, S_n = (k-1) S_{n-1} + S_{n-2}."""
    _check_k(k)
    if n < 0:
        raise ValueError("n must be >= 0")
    a, b = 1, k - 1
    for _ in range(n):
        a, b = b, (k - 1) * b + a
    return a


@lru_cache(maxsize=None)
def t_seq(k: int, n: int) -> int:
    """T_0 = T_1 = 1, T_n = T_{n-1} + (k-1) T_{n-2}."""
    _check_k(k)
    if n < 0:
        raise ValueError("n must be >= 0")
    a, b = 1, 1
    for _ in range(n):
        a, b = b, b + (k - 1) * a
    return a


# --- generators --------------------------------------------------------------

def _shift_graph(n: int, m1: int, m2: int) -> Digraph:
    if n < 3:
        raise ValueError(f"circulant families need n >= 3, got {n}")
    mult = {}
    for i in range(n):
        mult[(i, (i + 1) % n)] = m1
        mult[(i, (i + 2) % n)] = m2
    return Digraph(n, mult)


def gen_gn(n: int) -> Digraph:
    """Circulant digraph with edges i -> i+1 and i -> i+2 (mod n)."""
    return _shift_graph(n, 1, 1)


def gen_gnk(n: int, k: int) -> Digraph:
    """G_n with multiplicity k-1 on the shift-1 edges."""
    _check_k(k)
    return _shift_graph(n, k - 1, 1)


def gen_gpnk(n: int, k: int) -> Digraph:
    """G_n with multiplicity k-1 on the shift-2 edges."""
    _check_k(k)
    return _shift_graph(n, 1, k - 1)


def gexample_vertex(i: int, j: int, k: int) -> int:
    return i * (k + 1) + j


def gen_gexample(l: int, k: int) -> Digraph:
    """``l`` hubs alternating with ``l`` complete k-cliques around a ring.

    Hub ``(i, 0)`` points at every vertex of clique ``i``; every clique vertex
    points at the next hub ``(i+1 mod l, 0)``.
    """
    _check_k(k)
    if l < 1:
        raise ValueError("l must be >= 1")
    v = lambda i, j: gexample_vertex(i, j, k)
    edges = []
    for i in range(l):
        for j in range(1, k + 1):
            edges.append((v(i, 0), v(i, j)))
            edges.append((v(i, j), v((i + 1) % l, 0)))
            edges.extend((v(i, j), v(i, j2)) for j2 in range(1, k + 1) if j2 != j)
    return Digraph.from_edges(l * (k + 1), edges)


# --- closed forms ------------------------------------------------------------

def cycles_gnk_closed(n: int, k: int) -> int:
    if n < 3:
        raise ValueError("n must be >= 3")
    return s_seq(k, n - 2) + s_seq(k, n) + (n % 2)


def cycles_gpnk_closed(n: int, k: int) -> int:
    if n < 3:
        raise ValueError("n must be >= 3")
    return (k - 1) * t_seq(k, n - 2) + t_seq(k, n) + ((k - 1) ** n if n % 2 else 0)


def cycles_gexample_closed(l: int, k: int) -> int:
    """The published count. It agrees with enumeration for k <= 3 only (the clique
    term undercounts the cycles of a complete k-clique once k >= 4)."""
    _check_k(k)
    ring = sum(math.factorial(k) // math.factorial(r) for r in range(k + 1)) - 1
    return l * (2 ** (k + 1) - math.comb(k, 2) - 2 * k - 2) + ring ** l


# --- brute force -------------------------------------------------------------

def brute_max_cycles(c: GraphClass, cap: int = 10**6) -> tuple[int, Digraph]:
    best, arg = -1, None
    for g in enumerate_class(c, cap):
        cnt = count_cycles(g)
        if cnt > best:
            best, arg = cnt, g
    return best, arg


@lru_cache(maxsize=None)
def brute_mk(n: int, k: int, cap: int = 10**6) -> int:
    """Maximum cycle count over simple digraphs with outdegree <= k."""
    return brute_max_cycles(GraphClass("simple", n, k), cap)[0]


@lru_cache(maxsize=None)
def brute_fk(n: int, k: int, cap: int = 10**6) -> int:
    """Maximum cycle count over out-k-regular multigraphs with off-loop mult <= k-1."""
    return brute_max_cycles(GraphClass("multi", n, k), cap)[0]
