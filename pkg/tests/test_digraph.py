from __future__ import annotations

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from picycles.digraph import (
    H1, H2, CapExceeded, Digraph, GraphClass, GraphError, Multi, OutdegreeK, Simple,
    class_contains, class_size, contract_edge, enumerate_class, enumerate_two_regular_simple,
    find_forbidden_subgraph, is_contractible, is_in_contractible, is_isomorphic,
    is_out_contractible, not_in_contractible_edges, reduce_full_multiplicity, skeleton,
    weak_components,
)
from picycles.extremal import gen_gn, gen_gnk, gen_gpnk

from conftest import multigraphs, simple_graphs

# v1..v4 -> 0..3
CONTRACTION_CENTER = Digraph.from_edges(4, [(3, 0), (0, 1), (2, 1), (3, 2), (0, 2)])


def test_skeleton_of_loop():
    assert skeleton(Digraph(1, {(0, 0): 3})) == Digraph(1, {(0, 0): 1})


def test_skeleton_of_gnk_is_gn():
    assert skeleton(gen_gnk(6, 3)) == gen_gn(6)


@given(simple_graphs())
def test_skeleton_fixes_simple_graphs(g):
    assert skeleton(g) == g


@given(multigraphs())
def test_skeleton_idempotent_and_simple(g):
    s = skeleton(g)
    assert s.is_simple() and skeleton(s) == s and set(s.mult) == set(g.mult)


def test_contract_without_multi_edge():
    h = contract_edge(CONTRACTION_CENTER, 0, 1)
    assert h.n == 3 and h.is_simple()


def test_contract_creates_multi_edge():
    h = contract_edge(CONTRACTION_CENTER, 2, 1)
    assert h.n == 3 and not h.is_simple()
    # v1 reached both v2 and v3
    assert h.m(0, 1) == 2


def test_contract_two_cycle_leaves_loop():
    assert contract_edge(Digraph.from_edges(2, [(0, 1), (1, 0)]), 0, 1) == Digraph(1, {(0, 0): 1})


def test_contract_errors():
    with pytest.raises(GraphError):
        contract_edge(Digraph(1, {(0, 0): 1}), 0, 0)
    with pytest.raises(GraphError):
        contract_edge(CONTRACTION_CENTER, 1, 0)


@given(multigraphs(max_n=4), st.data())
def test_contraction_keeps_edge_total(g, data):
    nonloops = [(u, v) for (u, v) in g.mult if u != v]
    if not nonloops:
        return
    u, v = data.draw(st.sampled_from(nonloops))
    h = contract_edge(g, u, v)
    assert h.n == g.n - 1
    assert h.num_edges() == g.num_edges() - g.m(u, v)


def test_contractibility_examples():
    g = CONTRACTION_CENTER
    assert is_contractible(g, 0, 1)
    assert is_contractible(g, 3, 2)
    assert not is_in_contractible(g, 2, 1)
    assert not is_in_contractible(g, 0, 2) and not is_out_contractible(g, 0, 2)


def test_contractibility_rejects_multigraph():
    with pytest.raises(GraphError):
        is_in_contractible(Digraph(2, {(0, 1): 2}), 0, 1)


@given(simple_graphs(max_n=5), st.data())
def test_in_contractible_means_no_new_multi_edge_from_outside(g, data):
    nonloops = [(u, v) for (u, v) in g.mult if u != v]
    if not nonloops:
        return
    u, v = data.draw(st.sampled_from(nonloops))
    h = contract_edge(g, u, v)
    w = min(u, v)
    into_w = [h.m(x, w) for x in range(h.n) if x != w]
    out_of_w = [h.m(w, x) for x in range(h.n) if x != w]
    assert is_in_contractible(g, u, v) == all(m <= 1 for m in into_w)
    assert is_out_contractible(g, u, v) == all(m <= 1 for m in out_of_w)


def test_class_membership_examples():
    for n in range(3, 7):
        for k in (2, 3, 4):
            assert class_contains(Multi(n, k), gen_gnk(n, k))
            assert class_contains(Multi(n, k), gen_gpnk(n, k))
    assert class_contains(Simple(0, 3), Digraph(0, {}))
    assert not class_contains(Simple(1, 3), Digraph(1, {(0, 0): 3}))


def test_class_sizes():
    assert list(enumerate_class(Multi(1, 2))) == [Digraph(1, {(0, 0): 2})]
    assert len(list(enumerate_class(Multi(3, 2)))) == 64 == class_size(Multi(3, 2))
    assert len(list(enumerate_class(Simple(2, 2)))) == 16 == class_size(Simple(2, 2))


@pytest.mark.parametrize("c", [Simple(3, 2), Multi(3, 2), OutdegreeK(2, 3), Multi(2, 3), Simple(2, 3)])
def test_enumeration_is_exact(c):
    members = list(enumerate_class(c))
    assert len(set(members)) == len(members) == class_size(c)
    assert all(class_contains(c, g) for g in members)
    # brute force over every multiplicity map with entries up to k
    pairs = [(u, v) for u in range(c.n) for v in range(c.n)]
    oracle = 0
    for ms in itertools.product(range(c.k + 1), repeat=len(pairs)):
        if class_contains(c, Digraph(c.n, dict(zip(pairs, ms)))):
            oracle += 1
    assert oracle == len(members)


def test_enumeration_cap():
    with pytest.raises(CapExceeded):
        list(enumerate_class(Multi(4, 3), cap=10))


def test_bad_class():
    with pytest.raises(ValueError):
        GraphClass("tree", 3, 2)


def test_forbidden_examples():
    assert find_forbidden_subgraph(H1, "H1") is not None
    assert find_forbidden_subgraph(H2, "H2") is not None
    g6 = gen_gn(6)
    assert find_forbidden_subgraph(g6, "H1") is None
    assert find_forbidden_subgraph(g6, "H2") is None
    v, a, b = 0, 1, 2
    case = Digraph.from_edges(3, [(v, a), (v, b), (a, b), (b, a), (a, v), (b, v)])
    emb = find_forbidden_subgraph(case, "H1")
    assert emb is not None
    assert all((emb[x], emb[y]) in case.mult for (x, y) in H1.mult)


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7])
def test_gn2_and_gpn2_isomorphic_to_gn(n):
    assert is_isomorphic(gen_gnk(n, 2), gen_gn(n))
    assert is_isomorphic(gen_gpnk(n, 2), gen_gn(n))


@given(multigraphs(max_n=4), st.permutations(range(4)))
def test_isomorphic_to_relabelling(g, perm):
    perm = [p for p in perm if p < g.n] if g.n < 4 else list(perm)
    assert is_isomorphic(g, g.relabel(perm))


@given(multigraphs(max_n=5))
def test_weak_components_partition(g):
    comps = weak_components(g)
    assert sorted(v for c in comps for v in c) == list(range(g.n))
    where = {v: i for i, c in enumerate(comps) for v in c}
    assert all(where[u] == where[v] for (u, v) in g.mult)


def test_reduce_full_multiplicity():
    g = Digraph(2, {(0, 0): 2, (0, 1): 1, (1, 0): 2})
    assert reduce_full_multiplicity(g, 2) == Digraph(2, {(0, 0): 1, (0, 1): 1, (1, 0): 1})


@pytest.mark.parametrize("n", [3, 4, 5])
def test_two_regular_enumeration(n):
    got = list(enumerate_two_regular_simple(n))
    assert len(set(got)) == len(got)
    assert all(g.is_simple() and not g.has_loops() for g in got)
    assert all(g.outdegree(v) == 2 == g.indegree(v) for g in got for v in range(n))
    # oracle: filter all loopless simple graphs
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    oracle = 0
    for bits in itertools.product((0, 1), repeat=len(pairs)):
        g = Digraph(n, dict(zip(pairs, bits)))
        if all(g.outdegree(v) == 2 == g.indegree(v) for v in range(n)):
            oracle += 1
    assert oracle == len(got)


def test_gn_has_no_not_in_contractible_surplus():
    g = gen_gn(5)
    assert len(not_in_contractible_edges(g)) == 5


def test_rejects_bad_edges():
    with pytest.raises(GraphError):
        Digraph(2, {(0, 2): 1})
    with pytest.raises(GraphError):
        Digraph(2, {(0, 1): -1})
