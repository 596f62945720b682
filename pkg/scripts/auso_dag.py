"""Build the improvement DAG of a three-state, two-action MDP and list its edges.

Policies print as bit strings (action per state). Multi-switch edges are marked.
"""

from __future__ import annotations

from fractions import Fraction as F

from picycles.mdp import Mdp
from picycles.pi import build_pidag, longest_path

MDP = Mdp(
    F(9, 10),
    (
        ((1, 0, 0), (F(1, 4), F(1, 2), F(1, 4))),
        ((F(1, 2), 0, F(1, 2)), (0, 1, 0)),
        ((F(1, 2), F(1, 2), 0), (0, 1, 0)),
    ),
    ((3, F(11, 4)), (2, 3), (2, 3)),
)


def bits(p):
    return "".join(map(str, p))


def main():
    for max_gain in (False, True):
        d = build_pidag(MDP, max_gain_only=max_gain)
        label = "max-gain" if max_gain else "full"
        print(f"{label} DAG: {d.num_edges} edges, sinks {[bits(s) for s in d.sinks()]}")
        for p, q in sorted(d.edges()):
            flips = sum(a != b for a, b in zip(p, q))
            print(f"  {bits(p)} -> {bits(q)}{'  (multi)' if flips > 1 else ''}")
        length, path = longest_path(d)
        print(f"  longest path: {length} policies via {[bits(p) for p in path]}")


if __name__ == "__main__":
    main()
