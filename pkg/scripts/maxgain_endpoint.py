"""Show that <k,k> is not optimal on the canonical max-gain instance.

Prints every action gain at <k,k>; any positive entry is an improving switch.
"""

from __future__ import annotations

import argparse
from fractions import Fraction

from picycles.mdp import evaluate, gain
from picycles.twostate import as_policy, gen_maxgain


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k", type=int, default=5)
    ap.add_argument("--epsilon", type=Fraction, default=Fraction(1, 10))
    args = ap.parse_args(argv)

    m = gen_maxgain(args.k, args.epsilon)
    p = as_policy(args.k, args.k)
    v = evaluate(m, p)
    improving = []
    for s in range(2):
        for a in range(m.k):
            g = gain(m, p, s, a, v)
            print(f"state {s + 1} action {a + 1}: gain {float(g):+.6f}")
            if g > 0:
                improving.append((s + 1, a + 1))
    print("improving switches:", improving or "none, <k,k> is optimal")


if __name__ == "__main__":
    main()
