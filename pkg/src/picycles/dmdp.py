"""Deterministic MDPs as multigraphs, policies as tuples of rooted path-cycles,
and an audit that replays the distinct-path-cycle argument on a recorded run.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from .bounds import BoundValue
from .cycles import PathCycle, n1, n2
from .digraph import Digraph
from .mdp import Mdp, MdpError

Pair = tuple[int, int]   # (state, action)


def _require_deterministic(m: Mdp):
    if m.next_state is None:
        raise MdpError("this operation needs a deterministic MDP")


@dataclass(frozen=True)
class DmdpGraph:
    graph: Digraph
    label: dict            # edge instance (u, v, i) -> (state, action)
    instance: dict         # (state, action) -> edge instance


def to_graph(m: Mdp) -> DmdpGraph:
    """One vertex per state and one edge instance per state-action pair.

    Parallel instances of a multi-edge are numbered by increasing action.
    """
    _require_deterministic(m)
    mult: dict[tuple[int, int], int] = {}
    label, instance = {}, {}
    for s in range(m.n):
        for a in range(m.k):
            t = m.next_state[s][a]
            i = mult.get((s, t), 0)
            mult[(s, t)] = i + 1
            label[(s, t, i)] = (s, a)
            instance[(s, a)] = (s, t, i)
    return DmdpGraph(Digraph(m.n, mult), label, instance)


# --- policy walks ------------------------------------------------------------

@dataclass(frozen=True)
class Walk:
    """The lasso traced from ``root``: ``pairs[i]`` is taken at step i, and the
    last pair leads back to position ``entry``."""

    pairs: tuple[Pair, ...]
    entry: int

    @property
    def root(self) -> int:
        return self.pairs[0][0]

    @property
    def states(self) -> tuple[int, ...]:
        return tuple(s for s, _ in self.pairs)


def walk(m: Mdp, p, root: int) -> Walk:
    _require_deterministic(m)
    seen: dict[int, int] = {}
    pairs = []
    s = root
    while s not in seen:
        seen[s] = len(pairs)
        pairs.append((s, p[s]))
        s = m.next_state[s][p[s]]
    return Walk(tuple(pairs), seen[s])


def walk_value(m: Mdp, w: Walk) -> Fraction:
    """Discounted return of a lasso: prefix rewards, then the cycle repeated forever."""
    g = m.gamma
    prefix = sum((g ** i * m.R[s][a] for i, (s, a) in enumerate(w.pairs[:w.entry])), Fraction(0))
    cyc = w.pairs[w.entry:]
    cycle_sum = sum((g ** j * m.R[s][a] for j, (s, a) in enumerate(cyc)), Fraction(0))
    return prefix + g ** w.entry * cycle_sum / (1 - g ** len(cyc))


def evaluate_by_walks(m: Mdp, p) -> tuple[Fraction, ...]:
    return tuple(walk_value(m, walk(m, p, s)) for s in range(m.n))


def to_path_cycle(dg: DmdpGraph, w: Walk) -> PathCycle:
    edges = tuple(dg.instance[pa] for pa in w.pairs)
    return PathCycle(w.states, edges[:-1], edges[-1])


def representation(m: Mdp, p, dg: DmdpGraph | None = None) -> tuple[PathCycle, ...]:
    dg = dg or to_graph(m)
    return tuple(to_path_cycle(dg, walk(m, p, s)) for s in range(m.n))


# --- edge relations ----------------------------------------------------------

def non_branching(m: Mdp, s: int) -> bool:
    _require_deterministic(m)
    return len(set(m.next_state[s])) == 1


def equiv_same(m: Mdp, e1: Pair, e2: Pair) -> bool:
    """Equivalent edges for arbitrary action choice: same non-branching source."""
    if e1 == e2:
        return True
    return e1[0] == e2[0] and non_branching(m, e1[0])


def equiv_maxgain(m: Mdp, e1: Pair, e2: Pair) -> bool:
    """Equivalent edges for max-gain choice: same source and same target."""
    _require_deterministic(m)
    return e1[0] == e2[0] and m.next_state[e1[0]][e1[1]] == m.next_state[e2[0]][e2[1]]


def quasi_equal(m: Mdp, e1: Pair, e2: Pair) -> bool:
    return equiv_maxgain(m, e1, e2) and m.R[e1[0]][e1[1]] == m.R[e2[0]][e2[1]]


def e_max(m: Mdp) -> set[Pair]:
    """State-action pairs of largest reward within their same-target class."""
    _require_deterministic(m)
    best: dict[tuple[int, int], Fraction] = {}
    for s in range(m.n):
        for a in range(m.k):
            key = (s, m.next_state[s][a])
            r = m.R[s][a]
            if key not in best or r > best[key]:
                best[key] = r
    return {(s, a) for s in range(m.n) for a in range(m.k)
            if m.R[s][a] == best[(s, m.next_state[s][a])]}


def same_class_key(m: Mdp, w: Walk) -> tuple:
    return (w.entry,) + tuple((s, "*" if non_branching(m, s) else a) for s, a in w.pairs)


def maxgain_class_key(m: Mdp, w: Walk) -> tuple:
    return (w.entry,) + tuple((s, m.next_state[s][a]) for s, a in w.pairs)


# --- audit -------------------------------------------------------------------

@dataclass
class AuditReport:
    mode: str
    n: int
    k: int
    length: int
    witnesses_distinct: bool = True
    max_class_size: int = 0
    class_limit: int = 0
    graph_count: int = 0          # N1 or N2 of the DMDP graph
    length_limit: int = 0
    howard_checked: bool = False
    howard_ok: bool | None = None
    repeated_classes: int = 0     # witnesses that fall in an already-seen class
    failures: list[str] = field(default_factory=list)
    witnesses: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        d = asdict(self)
        d["ok"] = self.ok
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def choose_witnesses(m: Mdp, policies, values) -> list[Walk]:
    """One lasso per policy: the first is rooted at state 0; afterwards at the
    lowest state whose value strictly rose over the previous policy."""
    out = [walk(m, policies[0], 0)]
    for i in range(1, len(policies)):
        prev, cur = values[i - 1], values[i]
        risen = [s for s in range(m.n) if cur[s] > prev[s]]
        if not risen:
            raise AssertionError(f"policy {i} does not improve on policy {i - 1}")
        out.append(walk(m, policies[i], risen[0]))
    return out


def audit_trajectory(m: Mdp, traj, mode: str = "arbitrary", howard: bool = False) -> AuditReport:
    """Check a recorded run against the path-cycle counting argument.

    ``mode`` is "arbitrary" (classes under same-source non-branching
    equivalence, at most kn each, run length at most kn*N1) or "maxgain"
    (same-source same-target classes, at most n+1 each, length at most
    (n+1)*N2). ``howard`` also checks the Howard-specific length bound.
    """
    if mode not in ("arbitrary", "maxgain"):
        raise ValueError(f"unknown audit mode {mode!r}")
    _require_deterministic(m)
    policies, values = traj.policies, traj.values
    n, k = m.n, m.k
    rep = AuditReport(mode, n, k, len(policies))
    dg = to_graph(m)

    ws = choose_witnesses(m, policies, values)
    rep.witnesses = [[list(pa) for pa in w.pairs] + [w.entry] for w in ws]
    reps_so_far: set = set()
    for i, w in enumerate(ws):
        if i > 0 and w.pairs in reps_so_far:
            rep.witnesses_distinct = False
            rep.failures.append(f"witness of policy {i} already appears in an earlier representation")
        reps_so_far.update(walk(m, policies[i], s).pairs for s in range(n))

    key = same_class_key if mode == "arbitrary" else maxgain_class_key
    sizes: dict = {}
    for w in ws:
        kk = key(m, w)
        sizes[kk] = sizes.get(kk, 0) + 1
    rep.max_class_size = max(sizes.values())
    rep.repeated_classes = len(ws) - len(sizes)
    rep.class_limit = k * n if mode == "arbitrary" else n + 1
    if rep.max_class_size > rep.class_limit:
        rep.failures.append(f"equivalence class of size {rep.max_class_size} exceeds {rep.class_limit}")

    if mode == "arbitrary":
        rep.graph_count = n1(dg.graph, k)
        rep.length_limit = k * n * rep.graph_count
    else:
        rep.graph_count = n2(dg.graph, k)
        rep.length_limit = (n + 1) * rep.graph_count
    if rep.length > rep.length_limit:
        rep.failures.append(f"run of {rep.length} policies exceeds {rep.length_limit}")

    if howard:
        rep.howard_checked = True
        # with a single action there is only one policy to visit
        rep.howard_ok = BoundValue("HowardBound", n, k).admits(rep.length) if k >= 2 else rep.length == 1
        if not rep.howard_ok:
            rep.failures.append(f"run of {rep.length} policies exceeds the Howard bound")
    return rep
