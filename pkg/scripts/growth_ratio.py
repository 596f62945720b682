"""Compare brute-force maximum cycle counts with the alpha**n growth rate."""

from __future__ import annotations

import argparse

from picycles.extremal import alpha_power, brute_fk, ceil_alpha_power


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k", type=int, default=2)
    ap.add_argument("--max-n", type=int, default=5)
    args = ap.parse_args(argv)

    print("n,brute_fk,ceil_alpha_n,ratio")
    for n in range(1, args.max_n + 1):
        f = brute_fk(n, args.k)
        a = float(alpha_power(args.k, n))
        print(f"{n},{f},{ceil_alpha_power(args.k, n)},{f / a:.4f}")


if __name__ == "__main__":
    main()
