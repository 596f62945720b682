"""JSON / DOT / CSV serialisation. Rationals are always written as "p/q" strings."""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction

from .bounds import BoundValue
from .digraph import Digraph
from .mdp import Mdp, evaluate
from .pi import PiDag, PiTrajectory


def rat(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rat(s) -> Fraction:
    if isinstance(s, bool):
        raise ValueError("booleans are not rationals")
    if isinstance(s, (int, Fraction)):
        return Fraction(s)
    if isinstance(s, str):
        return Fraction(s.strip())
    raise ValueError(f"expected a 'p/q' string or an int, got {s!r}")


# --- graphs ------------------------------------------------------------------

def graph_to_dict(g: Digraph) -> dict:
    return {"n": g.n, "edges": [[u, v, m] for u, v, m in g.edges()]}


def graph_from_dict(d: dict) -> Digraph:
    mult: dict[tuple[int, int], int] = {}
    for item in d["edges"]:
        u, v = int(item[0]), int(item[1])
        m = int(item[2]) if len(item) > 2 else 1
        mult[(u, v)] = mult.get((u, v), 0) + m
    return Digraph(int(d["n"]), mult)


def dump_graph(g: Digraph) -> str:
    return json.dumps(graph_to_dict(g))


def load_graph(path) -> Digraph:
    with open(path) as fh:
        return graph_from_dict(json.load(fh))


def graph_to_dot(g: Digraph, name: str = "G") -> str:
    lines = [f"digraph {name} {{"]
    lines += [f"  {u};" for u in range(g.n)]
    for u, v, m in g.edges():
        lines.append(f'  {u} -> {v} [label="{m}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


# --- MDPs --------------------------------------------------------------------

def mdp_to_dict(m: Mdp) -> dict:
    d = {"n": m.n, "k": m.k, "gamma": rat(m.gamma), "deterministic": m.is_deterministic}
    if m.is_deterministic:
        d["next"] = [list(row) for row in m.next_state]
    else:
        d["T"] = [[[rat(p) for p in row] for row in acts] for acts in m.T]
    d["R"] = [[rat(r) for r in acts] for acts in m.R]
    return d


def mdp_from_dict(d: dict) -> Mdp:
    gamma = parse_rat(d["gamma"])
    R = [[parse_rat(r) for r in acts] for acts in d["R"]]
    if d.get("deterministic") or "next" in d:
        m = Mdp.deterministic(d["next"], R, gamma)
    else:
        T = [[[parse_rat(p) for p in row] for row in acts] for acts in d["T"]]
        m = Mdp(gamma, T, R)
    if "n" in d and d["n"] != m.n or "k" in d and d["k"] != m.k:
        raise ValueError("declared n/k disagree with the tables")
    return m


def dump_mdp(m: Mdp) -> str:
    return json.dumps(mdp_to_dict(m), indent=1)


def load_mdp(path) -> Mdp:
    with open(path) as fh:
        return mdp_from_dict(json.load(fh))


# --- runs and DAGs -----------------------------------------------------------

def trajectory_from_dict(d: dict) -> PiTrajectory:
    policies = [tuple(int(a) for a in p) for p in d["policies"]]
    values = [tuple(parse_rat(x) for x in v) for v in d.get("values", [])]
    switches = [{int(s): int(a) for s, a in sw} for sw in d.get("switches", [])]
    return PiTrajectory(policies, values, switches)


def load_trajectory(path, m: Mdp | None = None) -> PiTrajectory:
    """Read a run. Given ``m``, values are recomputed exactly and any recorded
    values must agree with them."""
    with open(path) as fh:
        t = trajectory_from_dict(json.load(fh))
    if m is not None:
        exact = [evaluate(m, p) for p in t.policies]
        if t.values and t.values != exact:
            raise ValueError("recorded values disagree with the MDP")
        t.values = exact
    return t


def policy_label(p) -> str:
    return "".join(str(a) for a in p) if max(p, default=0) < 10 else ",".join(map(str, p))


def pidag_to_dot(d: PiDag) -> str:
    lines = ["digraph pidag {"]
    for p in d.vertices:
        lines.append(f'  "{policy_label(p)}";')
    for p, q in d.edges():
        style = "solid" if len(d.switch_of(p, q)) == 1 else "dashed"
        lines.append(f'  "{policy_label(p)}" -> "{policy_label(q)}" [style={style}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def bounds_csv(rows: list[BoundValue], dps: int = 20) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["name", "n", "k", "value", "exact"])
    for b in rows:
        x = b.exact()
        w.writerow([b.name, b.n, b.k, f"{b.value(dps)}", "yes" if isinstance(x, int) else "no"])
    return buf.getvalue()
