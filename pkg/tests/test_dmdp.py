from __future__ import annotations

import random
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from picycles.cycles import iter_path_cycles
from picycles.digraph import OutdegreeK, class_contains
from picycles.dmdp import (
    Walk, audit_trajectory, choose_witnesses, e_max, equiv_maxgain, equiv_same, evaluate_by_walks,
    maxgain_class_key, non_branching, quasi_equal, representation, same_class_key, to_graph, walk,
)
from picycles.mdp import Mdp, MdpError, evaluate, random_dmdp
from picycles.pi import PiTrajectory, SwitchingRule, build_pidag, longest_path, run_pi

from conftest import dmdps

# s1..s10 -> 0..9; action 0 is the dashed edge, action 1 the solid one
TEN_NEXT = [
    [2, 1], [2, 1], [3, 3], [4, 6], [9, 5], [3, 6], [7, 5], [8, 9], [6, 9], [8, 0],
]


def ten_state():
    return Mdp.deterministic(TEN_NEXT, [[0, 0]] * 10, F(1, 2))


def test_ten_state_graph():
    dg = to_graph(ten_state())
    assert dg.graph.num_edges() == 20
    assert dg.graph.m(2, 3) == 2
    assert class_contains(OutdegreeK(10, 2), dg.graph)


def test_ten_state_representation():
    m = ten_state()
    pi = tuple(int(c) for c in "0010101010")
    rep = representation(m, pi)
    s2, s8 = rep[1], rep[7]
    assert s2.vertices == (1, 2, 3, 4, 5) and s2.closing_edge[:2] == (5, 3)
    assert s8.vertices == (7, 8, 9) and s8.closing_edge[:2] == (9, 8)
    # s3 -> s4 is a multi-edge; action 1 is its second instance
    assert s2.path_edges[1] == (2, 3, 1)


def test_self_loop_graph_and_representation():
    k = 3
    m = Mdp.deterministic([[0] * k, [1] * k], [[0] * k, [0] * k], F(1, 3))
    dg = to_graph(m)
    assert dg.graph.m(0, 0) == k and dg.graph.m(1, 1) == k
    for pc in representation(m, (0, 2)):
        assert len(pc.vertices) == 1 and pc.is_cycle()


@given(dmdps(max_n=4, max_k=3))
def test_graph_is_out_regular(m):
    g = to_graph(m).graph
    assert all(g.outdegree(s) == m.k for s in range(m.n))
    if m.k >= 2:
        assert class_contains(OutdegreeK(m.n, m.k), g)


@given(dmdps(max_n=4, max_k=3), st.data())
def test_walk_values_match_solver(m, data):
    p = data.draw(st.tuples(*[st.integers(0, m.k - 1) for _ in range(m.n)]))
    assert evaluate_by_walks(m, p) == evaluate(m, p)


@given(dmdps(max_n=4, max_k=3), st.data())
def test_representation_is_made_of_path_cycles(m, data):
    p = data.draw(st.tuples(*[st.integers(0, m.k - 1) for _ in range(m.n)]))
    dg = to_graph(m)
    everything = set(iter_path_cycles(dg.graph))
    for s, pc in enumerate(representation(m, p, dg)):
        assert pc.root == s and pc in everything


def test_equiv_same_examples():
    m = Mdp.deterministic([[1, 1, 1], [0, 1, 0]], [[1, 2, 3], [0, 0, 0]], F(1, 2))
    assert non_branching(m, 0) and not non_branching(m, 1)
    assert all(equiv_same(m, (0, a), (0, b)) for a in range(3) for b in range(3))
    assert not equiv_same(m, (1, 0), (1, 2))
    assert equiv_same(m, (1, 2), (1, 2))
    # two lassos differing only in the non-branching edge share a class key
    w1, w2 = walk(m, (0, 1), 0), walk(m, (2, 1), 0)
    assert w1 != w2 and same_class_key(m, w1) == same_class_key(m, w2)


def test_maxgain_relations_examples():
    m = Mdp.deterministic([[1, 1, 1], [0, 1, 0]], [[3, 3, 1], [0, 0, 0]], F(1, 2))
    assert equiv_maxgain(m, (0, 0), (0, 2)) and not quasi_equal(m, (0, 0), (0, 2))
    assert quasi_equal(m, (0, 0), (0, 1))
    assert {(0, 0), (0, 1)} <= e_max(m) and (0, 2) not in e_max(m)


@given(dmdps(max_n=3, max_k=4))
def test_relations_are_equivalences(m):
    pairs = [(s, a) for s in range(m.n) for a in range(m.k)]
    for rel in (equiv_same, equiv_maxgain, quasi_equal):
        for x in pairs:
            assert rel(m, x, x)
            for y in pairs:
                assert rel(m, x, y) == rel(m, y, x)
                if rel(m, x, y):
                    assert all(rel(m, x, z) for z in pairs if rel(m, y, z))


@given(dmdps(max_n=3, max_k=4))
def test_e_max_meets_class_in_quasi_class(m):
    top = e_max(m)
    pairs = [(s, a) for s in range(m.n) for a in range(m.k)]
    for e in top:
        approx = {f for f in pairs if equiv_maxgain(m, e, f)}
        quasi = {f for f in pairs if quasi_equal(m, e, f)}
        assert top & approx == quasi


def test_relations_need_deterministic_mdp():
    m = Mdp(F(1, 2), (((F(1, 2), F(1, 2)),), ((0, 1),)), ((0,), (0,)))
    with pytest.raises(MdpError):
        to_graph(m)


@given(dmdps(max_n=4, max_k=3), st.sampled_from(["howard", "lowest-howard", "random:3"]))
def test_arbitrary_audit_passes(m, rule):
    t = run_pi(m, rule=SwitchingRule.parse(rule))
    rep = audit_trajectory(m, t, "arbitrary", howard=rule != "random:3")
    assert rep.ok, rep.failures
    assert rep.max_class_size <= m.k * m.n


@given(dmdps(max_n=4, max_k=3))
def test_maxgain_audit_passes(m):
    for rule in ("maxgain-simplex", "howard", "highest-maxgain"):
        t = run_pi(m, rule=SwitchingRule.parse(rule))
        rep = audit_trajectory(m, t, "maxgain")
        assert rep.ok, rep.failures
        assert rep.max_class_size <= m.n + 1


def test_length_one_audit():
    m = Mdp.deterministic([[0, 0]], [[1, 0]], F(1, 2))
    t = run_pi(m, (0,))
    assert len(t) == 1
    for mode in ("arbitrary", "maxgain"):
        assert audit_trajectory(m, t, mode).ok


def test_audit_on_longest_dag_paths():
    rng = random.Random(1)
    for _ in range(15):
        m = random_dmdp(rng, 3, 2)
        for mg in (False, True):
            d = build_pidag(m, max_gain_only=mg)
            _, path = longest_path(d)
            t = PiTrajectory(path, [d.values[p] for p in path])
            assert audit_trajectory(m, t, "maxgain" if mg else "arbitrary").ok


def test_audit_flags_non_improving_run():
    m = Mdp.deterministic([[0, 0]], [[1, 0]], F(1, 2))
    t = PiTrajectory([(0,), (1,)], [evaluate(m, (0,)), evaluate(m, (1,))])
    with pytest.raises(AssertionError):
        audit_trajectory(m, t)
    with pytest.raises(ValueError):
        audit_trajectory(m, run_pi(m), "sideways")


def test_witnesses_follow_rising_states():
    m = random_dmdp(random.Random(4), 3, 3)
    t = run_pi(m)
    ws = choose_witnesses(m, t.policies, t.values)
    assert ws[0].root == 0
    for i in range(1, len(t)):
        assert t.values[i][ws[i].root] > t.values[i - 1][ws[i].root]


def test_walk_shape():
    w = walk(ten_state(), tuple(int(c) for c in "0010101010"), 0)
    assert isinstance(w, Walk) and w.states == (0, 2, 3, 4, 5) and w.entry == 2
    assert maxgain_class_key(ten_state(), w)[0] == 2
