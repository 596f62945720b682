"""Policy iteration with pluggable switching rules, and the policy-improvement DAG."""

from __future__ import annotations

import graphlib
import random
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .mdp import InvalidImprovement, Mdp, Policy, default_policy, evaluate, gain_table, improve

STATE_SELECTORS = ("all", "highest", "best", "scripted", "random")
ACTION_SELECTORS = ("max_gain", "lowest", "scripted", "random")


class StepCapExceeded(RuntimeError):
    pass


class ScriptError(RuntimeError):
    pass


@dataclass
class SwitchingRule:
    """How one improvement step picks its switched states and their new actions.

    ``states``:  all (Howard), highest (largest improvable index), best (the
    single pair of globally largest gain, lowest index on ties), scripted, random.
    ``actions``: max_gain (lowest index on ties), lowest, scripted, random.

    A scripted rule is driven by ``script``: either a list of policies to visit
    after the initial one, or a callable mapping the current policy to the next
    (``None`` once it has nothing to say). Scripted states with ``max_gain``
    actions additionally require every scripted action to be a maximiser. When
    the script runs out, ``fallback`` takes over; without one the run aborts.
    """

    states: str = "all"
    actions: str = "max_gain"
    script: Sequence[Sequence[int]] | Callable | None = None
    seed: int | None = None
    fallback: SwitchingRule | None = None

    def __post_init__(self):
        if self.states not in STATE_SELECTORS:
            raise ValueError(f"unknown state selector {self.states!r}")
        if self.actions not in ACTION_SELECTORS:
            raise ValueError(f"unknown action selector {self.actions!r}")
        if "scripted" in (self.states, self.actions) and self.script is None:
            raise ValueError("scripted selectors need a script")
        if self.actions == "scripted" and self.states != "scripted":
            raise ValueError("scripted actions need scripted states")
        if self.actions == "random" and self.states == "scripted":
            raise ValueError("scripted states take scripted or max_gain actions")
        if "random" in (self.states, self.actions) and self.seed is None:
            raise ValueError("random selectors need a seed")

    @classmethod
    def howard(cls) -> SwitchingRule:
        return cls("all", "max_gain")

    @classmethod
    def max_gain_simplex(cls) -> SwitchingRule:
        return cls("best", "max_gain")

    @classmethod
    def scripted(cls, script, fallback: SwitchingRule | None = None) -> SwitchingRule:
        return cls("scripted", "scripted", script=script, fallback=fallback)

    @classmethod
    def seeded_random(cls, seed: int) -> SwitchingRule:
        return cls("random", "random", seed=seed)

    @classmethod
    def parse(cls, text: str, script=None) -> SwitchingRule:
        """Names used on the command line: howard, maxgain-simplex, maxgain-howard,
        lowest-howard, highest-maxgain, scripted, random:SEED."""
        if text in ("howard", "maxgain-howard"):
            return cls.howard()
        if text == "maxgain-simplex":
            return cls.max_gain_simplex()
        if text == "lowest-howard":
            return cls("all", "lowest")
        if text == "highest-maxgain":
            return cls("highest", "max_gain")
        if text.startswith("scripted"):
            return cls.scripted(script)
        if text.startswith("random:"):
            return cls.seeded_random(int(text.split(":", 1)[1]))
        raise ValueError(f"unknown switching rule {text!r}")


@dataclass
class PiTrajectory:
    policies: list[Policy]
    values: list[tuple]
    switches: list[dict[int, int]] = field(default_factory=list)

    def __len__(self):
        return len(self.policies)

    @property
    def final(self) -> Policy:
        return self.policies[-1]

    def to_dict(self) -> dict:
        return {
            "policies": [list(p) for p in self.policies],
            "values": [[str(x) for x in v] for v in self.values],
            "switches": [[[s, a] for s, a in sorted(sw.items())] for sw in self.switches],
        }


def _argmax_actions(row, candidates):
    best = max(row[a] for a in candidates)
    return [a for a in candidates if row[a] == best]


def _choose_switch(rule: SwitchingRule, table, p, rng, step_script) -> dict[int, int]:
    n, k = len(table), len(table[0])
    improving = {s: [a for a in range(k) if table[s][a] > 0] for s in range(n)}
    splus = [s for s in range(n) if improving[s]]

    if rule.states == "scripted":
        target = step_script(p)
        if target is None:
            if rule.fallback is None:
                raise ScriptError(f"script ended at {p} but improvable states remain: {splus}")
            return _choose_switch(rule.fallback, table, p, rng, None)
        sw = {s: a for s, a in enumerate(target) if a != p[s]}
        if rule.actions in ("max_gain", "lowest"):
            for s, a in sw.items():
                if a not in improving[s]:
                    raise ScriptError(f"scripted action {a} at state {s} does not improve {p}")
                want = _argmax_actions(table[s], improving[s]) if rule.actions == "max_gain" else improving[s][:1]
                if a not in want:
                    raise ScriptError(f"scripted action {a} at state {s} is not a {rule.actions} choice for {p}")
        return sw

    if rule.states == "all":
        states = splus
    elif rule.states == "highest":
        states = [max(splus)]
    elif rule.states == "best":
        best = max(table[s][a] for s in splus for a in improving[s])
        states = [min(s for s in splus if best in (table[s][a] for a in improving[s]))]
    else:
        size = rng.randint(1, len(splus))
        states = sorted(rng.sample(splus, size))

    sw = {}
    for s in states:
        if rule.actions == "max_gain":
            sw[s] = _argmax_actions(table[s], improving[s])[0]
        elif rule.actions == "lowest":
            sw[s] = improving[s][0]
        else:
            sw[s] = rng.choice(improving[s])
    return sw


def _script_stepper(script):
    if callable(script):
        return script
    seq = [tuple(q) for q in script]
    pos = {"i": 0}

    def step(_p):
        if pos["i"] >= len(seq):
            return None
        q = seq[pos["i"]]
        pos["i"] += 1
        return q

    return step


def run_pi(m: Mdp, init: Sequence[int] | None = None, rule: SwitchingRule | None = None,
           step_cap: int | None = None, check: bool = True) -> PiTrajectory:
    """Iterate policy improvement until no state can improve.

    ``step_cap`` defaults to k^n, the number of policies; hitting it means a bug.
    """
    rule = rule or SwitchingRule.howard()
    p = default_policy(m) if init is None else m.check_policy(init)
    cap = m.k ** m.n if step_cap is None else step_cap
    rng = random.Random(rule.seed)
    step_script = _script_stepper(rule.script) if rule.script is not None else None

    v = evaluate(m, p)
    traj = PiTrajectory([p], [v])
    while True:
        table = gain_table(m, p, v)
        if not any(x > 0 for row in table for x in row):
            break
        if len(traj.policies) >= cap:
            raise StepCapExceeded(f"policy iteration exceeded {cap} policies")
        sw = _choose_switch(rule, table, p, rng, step_script)
        try:
            q = improve(m, p, sw, check=check, v=v)
        except InvalidImprovement as exc:
            raise ScriptError(f"illegal step from {p}: {exc}") from exc
        p, v = q, evaluate(m, q)
        traj.policies.append(p)
        traj.values.append(v)
        traj.switches.append(sw)
    return traj


# --- PI-DAG ------------------------------------------------------------------

@dataclass
class PiDag:
    n: int
    k: int
    max_gain_only: bool
    values: dict[Policy, tuple]
    succ: dict[Policy, list[Policy]]

    @property
    def vertices(self) -> list[Policy]:
        return list(self.values)

    def edges(self):
        for p, qs in self.succ.items():
            for q in qs:
                yield p, q

    def switch_of(self, p: Policy, q: Policy) -> dict[int, int]:
        """The improvement set behind edge p -> q (the positions where they differ)."""
        return {s: b for s, (a, b) in enumerate(zip(p, q)) if a != b}

    @property
    def num_edges(self) -> int:
        return sum(len(qs) for qs in self.succ.values())

    def sinks(self) -> list[Policy]:
        return [p for p, qs in self.succ.items() if not qs]

    def topological_order(self) -> list[Policy]:
        ts = graphlib.TopologicalSorter({q: [] for q in self.values})
        for p, q in self.edges():
            ts.add(q, p)
        return list(ts.static_order())


def _successors(p, allowed):
    # product over improvable states of "keep" or each allowed action
    out = [p]
    for s, acts in allowed.items():
        out = out + [q[:s] + (a,) + q[s + 1:] for q in out for a in acts]
    return out[1:]


def build_pidag(m: Mdp, max_gain_only: bool = False, cap: int = 4096, check_acyclic: bool = True) -> PiDag:
    """All k^n policies with an edge for every legal single improvement step.

    With ``max_gain_only`` each switched action must attain the largest gain at
    its state; every tied maximiser is kept.
    """
    total = m.k ** m.n
    if total > cap:
        raise ValueError(f"{total} policies exceed the cap of {cap}")
    values = {p: evaluate(m, p) for p in m.policies()}
    succ = {}
    for p, v in values.items():
        table = gain_table(m, p, v)
        allowed = {}
        for s in range(m.n):
            acts = [a for a in range(m.k) if table[s][a] > 0]
            if acts and max_gain_only:
                acts = _argmax_actions(table[s], acts)
            if acts:
                allowed[s] = acts
        succ[p] = _successors(p, allowed)
    d = PiDag(m.n, m.k, max_gain_only, values, succ)
    if check_acyclic:
        d.topological_order()  # raises graphlib.CycleError on a cycle
    return d


def longest_path(d: PiDag, start: Policy | None = None) -> tuple[int, list[Policy]]:
    """Most policies on any directed path (optionally starting at ``start``)."""
    order = d.topological_order()
    best: dict[Policy, int] = {}
    nxt: dict[Policy, Policy | None] = {}
    for p in reversed(order):
        best[p], nxt[p] = 1, None
        for q in d.succ[p]:
            if best[q] + 1 > best[p]:
                best[p], nxt[p] = best[q] + 1, q
    if start is not None:
        p = tuple(start)
    else:
        p = max(order, key=lambda x: best[x])
    path = [p]
    while nxt[path[-1]] is not None:
        path.append(nxt[path[-1]])
    return best[p], path
