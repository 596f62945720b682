"""Print the scripted two-state runs and their policy values.

Shows the Hamiltonian run on the arbitrary-choice instance and the max-gain
run on the max-gain instance, one policy per line with exact and decimal values.
"""

from __future__ import annotations

import argparse
from fractions import Fraction

from picycles.twostate import (as_pair, gen_arbitrary, gen_maxgain, run_arbitrary_script,
                               run_maxgain_script)


def show(title, traj):
    print(title)
    for p, v in zip(traj.policies, traj.values):
        i, j = as_pair(p)
        print(f"  <{i},{j}>  V1={float(v[0]):.6f}  V2={float(v[1]):.6f}")
    print(f"  {len(traj)} policies")


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k", type=int, default=5)
    ap.add_argument("--epsilon", type=Fraction, default=Fraction(1, 10))
    args = ap.parse_args(argv)

    show(f"arbitrary choice, k={args.k}", run_arbitrary_script(gen_arbitrary(args.k), args.k))
    show(f"max-gain choice, k={args.k}, epsilon={args.epsilon}",
         run_maxgain_script(gen_maxgain(args.k, args.epsilon), args.k, finish=True))


if __name__ == "__main__":
    main()
