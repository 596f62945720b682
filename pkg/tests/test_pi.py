from __future__ import annotations

import itertools
import random
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from picycles.mdp import Mdp, Order, compare_values, evaluate, improvable_set, random_dmdp
from picycles.pi import (
    PiDag, ScriptError, StepCapExceeded, SwitchingRule, build_pidag, longest_path, run_pi,
)
from picycles.twostate import as_pair, as_policy, gen_arbitrary, gen_maxgain

from conftest import dmdps, mdps
from instances import AUSO, AUSO_EDGES

RULES = ["howard", "maxgain-simplex", "lowest-howard", "highest-maxgain", "random:5"]


def test_auso_dag_matches_drawing():
    d = build_pidag(AUSO)
    assert len(d.vertices) == 8
    assert set(d.edges()) == AUSO_EDGES
    assert d.sinks() == [(0, 1, 1)]
    single = [e for e in d.edges() if len(d.switch_of(*e)) == 1]
    assert len(single) == 12 and d.num_edges == 19


def test_auso_max_gain_dag_is_subgraph():
    full, mg = build_pidag(AUSO), build_pidag(AUSO, max_gain_only=True)
    assert set(mg.edges()) <= set(full.edges())


@given(mdps(max_n=3, max_k=3))
def test_max_gain_dag_inside_full_dag(m):
    full, mg = build_pidag(m), build_pidag(m, max_gain_only=True)
    assert set(mg.edges()) <= set(full.edges())
    assert set(mg.sinks()) == set(full.sinks())
    assert longest_path(mg)[0] <= longest_path(full)[0]


@given(mdps(max_n=3, max_k=3))
def test_dag_edges_are_improvements(m):
    d = build_pidag(m)
    for p, q in d.edges():
        assert compare_values(d.values[p], d.values[q]) == Order.LESS
    for p in d.sinks():
        assert not improvable_set(m, p, d.values[p])


def test_dag_edge_set_by_brute_force():
    rng = random.Random(11)
    for _ in range(20):
        m = random_dmdp(rng, 2, 3)
        d = build_pidag(m)
        want = set()
        for p in m.policies():
            imp = improvable_set(m, p)
            for q in m.policies():
                diff = {s: q[s] for s in range(m.n) if q[s] != p[s]}
                if diff and all((s, a) in imp for s, a in diff.items()):
                    want.add((p, q))
        assert set(d.edges()) == want


@given(mdps(max_n=3, max_k=2), st.sampled_from(RULES))
def test_run_is_a_dag_path(m, rule):
    d = build_pidag(m)
    t = run_pi(m, rule=SwitchingRule.parse(rule))
    for p, q in zip(t.policies, t.policies[1:]):
        assert q in d.succ[p]
    assert t.final in d.sinks()
    assert len(t) <= longest_path(d, t.policies[0])[0]


@given(mdps(max_n=3, max_k=3))
def test_max_gain_runs_stay_in_max_gain_dag(m):
    mg = build_pidag(m, max_gain_only=True)
    for rule in ("howard", "maxgain-simplex", "highest-maxgain"):
        t = run_pi(m, rule=SwitchingRule.parse(rule))
        for p, q in zip(t.policies, t.policies[1:]):
            assert q in mg.succ[p]


def test_optimal_start_gives_length_one():
    m = gen_arbitrary(4)
    t = run_pi(m, as_policy(1, 1))
    assert len(t) == 1 and t.switches == []


def test_single_policy_dag():
    m = Mdp.deterministic([[0]], [[1]], F(1, 2))
    d = build_pidag(m)
    assert longest_path(d) == (1, [(0,)])


def test_two_state_two_action_dmdps_longest_at_most_five():
    for nxt in itertools.product(range(2), repeat=4):
        ns = [list(nxt[:2]), list(nxt[2:])]
        rng = random.Random(hash(nxt) & 0xffff)
        for _ in range(25):
            m = random_dmdp(rng, 2, 2)
            m = Mdp.deterministic(ns, m.R, m.gamma)
            d = build_pidag(m)
            assert len(d.vertices) <= 16
            assert longest_path(d)[0] <= 5


@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_adversarial_dag_has_hamiltonian_path(k):
    assert longest_path(build_pidag(gen_arbitrary(k)))[0] == k * k


@pytest.mark.parametrize("k", [3, 4, 5])
def test_max_gain_dag_path_from_first_policy(k):
    # a max-gain run starting at <1,1> can visit at least 2k - 1 policies
    d = build_pidag(gen_maxgain(k), max_gain_only=True)
    assert longest_path(d, as_policy(1, 1))[0] >= 2 * k - 1


def test_longest_path_witness_is_a_path():
    d = build_pidag(AUSO)
    length, path = longest_path(d)
    assert len(path) == length == 4
    assert all(q in d.succ[p] for p, q in zip(path, path[1:]))


def test_scripted_rule_validation():
    m = gen_arbitrary(3)
    start = as_policy(3, 1)
    # a policy with a non-improving alternative action
    p, s, a = next((p, s, a) for p in m.policies() for s in range(2) for a in range(3)
                   if a != p[s] and (s, a) not in improvable_set(m, p) and improvable_set(m, p))
    bad = tuple(a if t == s else p[t] for t in range(2))
    with pytest.raises(ScriptError):
        run_pi(m, p, SwitchingRule.scripted([bad]))
    with pytest.raises(ScriptError):
        run_pi(m, start, SwitchingRule.scripted([as_policy(3, 2)]))  # script ends early
    t = run_pi(m, start, SwitchingRule.scripted([as_policy(3, 2)], fallback=SwitchingRule.howard()))
    assert t.policies[1] == as_policy(3, 2) and not improvable_set(m, t.final)


def test_step_cap():
    with pytest.raises(StepCapExceeded):
        run_pi(gen_arbitrary(4), as_policy(4, 1), SwitchingRule("all", "lowest"), step_cap=2)


def test_rule_parsing():
    assert SwitchingRule.parse("howard") == SwitchingRule.parse("maxgain-howard")
    assert SwitchingRule.parse("random:9").seed == 9
    with pytest.raises(ValueError):
        SwitchingRule.parse("bogus")
    with pytest.raises(ValueError):
        SwitchingRule("random", "random")
    with pytest.raises(ValueError):
        SwitchingRule("all", "scripted", script=[])


@given(dmdps(max_n=3, max_k=3), st.integers(0, 1000))
def test_random_rule_is_reproducible(m, seed):
    rule = SwitchingRule.seeded_random(seed)
    assert run_pi(m, rule=rule).policies == run_pi(m, rule=SwitchingRule.seeded_random(seed)).policies


def test_trajectory_dict():
    t = run_pi(AUSO, (1, 0, 0))
    d = t.to_dict()
    assert d["policies"][0] == [1, 0, 0] and len(d["values"]) == len(t)
    assert evaluate(AUSO, t.final) == t.values[-1]


def test_cyclic_graph_is_rejected():
    import graphlib
    d = PiDag(1, 2, False, {(0,): (), (1,): ()}, {(0,): [(1,)], (1,): [(0,)]})
    with pytest.raises(graphlib.CycleError):
        d.topological_order()
