"""Command-line front end. JSON goes to stdout, diagnostics to stderr."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import serialize
from .bounds import all_bounds
from .cycles import count_cycles, count_path_cycles, count_paths, iter_cycles, iter_path_cycles, n1, n2
from .digraph import GraphClass
from .dmdp import audit_trajectory
from .extremal import brute_max_cycles, gen_gexample, gen_gn, gen_gnk, gen_gpnk
from .pi import SwitchingRule, build_pidag, longest_path, run_pi
from .suite import CHECKS, verify_all
from .twostate import gen_arbitrary, gen_maxgain, verify_arbitrary_ub, verify_maxgain_ub


def _emit(obj):
    sys.stdout.write(json.dumps(obj) + "\n")


def _parse_policy(text: str | None):
    if not text:
        return None
    return tuple(int(x) for x in text.replace(" ", "").split(","))


def cmd_gen_extremal(args):
    fam = args.family
    if fam == "gn":
        g = gen_gn(args.n)
    elif fam == "gnk":
        g = gen_gnk(args.n, args.k)
    elif fam == "gpnk":
        g = gen_gpnk(args.n, args.k)
    else:
        g = gen_gexample(args.l, args.k)
    if args.dot:
        sys.stdout.write(serialize.graph_to_dot(g))
    else:
        _emit(serialize.graph_to_dict(g))
    return 0


def cmd_count(args):
    g = serialize.load_graph(args.input)
    what = args.what
    if args.list:
        if what == "cycles":
            for c in iter_cycles(g, args.cap):
                _emit({"vertices": list(c.vertices), "edges": [list(e) for e in c.edges]})
        elif what == "path-cycles":
            for pc in iter_path_cycles(g, args.cap):
                _emit({"vertices": list(pc.vertices), "path_edges": [list(e) for e in pc.path_edges],
                       "closing_edge": list(pc.closing_edge)})
        else:
            print(f"--list is not supported for {what}", file=sys.stderr)
            return 2
        return 0
    if what == "cycles":
        value = count_cycles(g, args.cap)
    elif what == "path-cycles":
        value = count_path_cycles(g, rooted=not args.unrooted, cap=args.cap)
    elif what == "paths":
        value = count_paths(g, args.cap)
    elif what == "n1":
        value = n1(g, args.k, args.cap)
    else:
        value = n2(g, args.k, args.cap)
    print(value)
    return 0


def cmd_bounds(args):
    sys.stdout.write(serialize.bounds_csv(all_bounds(args.n, args.k), args.dps))
    return 0


def cmd_bruteforce(args):
    best, arg = brute_max_cycles(GraphClass(args.cls, args.n, args.k), args.cap)
    _emit({"class": args.cls, "n": args.n, "k": args.k, "max_cycles": best,
           "witness": serialize.graph_to_dict(arg) if arg is not None else None})
    return 0


def cmd_gen_adversarial(args):
    if args.kind == "arbitrary":
        m = gen_arbitrary(args.k, args.seed)
    else:
        m = gen_maxgain(args.k, Fraction(args.epsilon))
    text = serialize.dump_mdp(m) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_run_pi(args):
    m = serialize.load_mdp(args.mdp)
    script = None
    rule_text = args.rule
    if rule_text.startswith("scripted:"):
        with open(rule_text.split(":", 1)[1]) as fh:
            data = json.load(fh)
        script = data["policies"] if isinstance(data, dict) else data
        init = tuple(script[0])
        script = script[1:]
    else:
        init = _parse_policy(args.init)
    rule = SwitchingRule.parse(rule_text, script)
    t = run_pi(m, init, rule)
    _emit(t.to_dict())
    return 0


def cmd_pidag(args):
    m = serialize.load_mdp(args.mdp)
    d = build_pidag(m, max_gain_only=args.max_gain, cap=args.cap)
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(serialize.pidag_to_dot(d))
    if args.stats or not args.dot:
        length, path = longest_path(d)
        _emit({
            "vertices": len(d.values), "edges": d.num_edges, "max_gain_only": d.max_gain_only,
            "longest_path": length, "witness": [list(p) for p in path],
            "sinks": [list(p) for p in d.sinks()],
        })
    return 0


def cmd_audit(args):
    m = serialize.load_mdp(args.mdp)
    t = serialize.load_trajectory(args.trajectory, m)
    rep = audit_trajectory(m, t, args.mode, howard=args.howard)
    print(rep.to_json())
    return 0 if rep.ok else 1


def _parse_mode(text: str):
    if text == "exhaustive":
        return {"mode": "exhaustive"}
    parts = text.split(":")
    if parts[0] != "random" or len(parts) != 3:
        raise argparse.ArgumentTypeError("mode is 'exhaustive' or 'random:N:SEED'")
    return {"mode": "random", "trials": int(parts[1]), "seed": int(parts[2])}


def cmd_verify_2state(args):
    fn = verify_arbitrary_ub if args.kind == "arbitrary" else verify_maxgain_ub
    rep = fn(args.k, ties=args.ties, **args.mode)
    _emit(rep.to_dict())
    return 0 if rep.ok else 1


def cmd_verify_all(args):
    rep = verify_all(args.profile, only=args.only, workers=args.workers)
    for c in rep.checks:
        print(c.line(), file=sys.stderr)
    print(rep.to_json())
    return rep.exit_code


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="picycles", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-extremal", help="emit an extremal digraph as JSON")
    p.add_argument("--family", choices=["gn", "gnk", "gpnk", "gexample"], required=True)
    p.add_argument("--n", type=int, default=6)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--l", type=int, default=1)
    p.add_argument("--dot", action="store_true", help="emit DOT instead of JSON")
    p.set_defaults(func=cmd_gen_extremal)

    p = sub.add_parser("count", help="count cycles, paths or path-cycles of a graph")
    p.add_argument("--input", required=True)
    p.add_argument("--what", choices=["cycles", "path-cycles", "paths", "n1", "n2"], default="cycles")
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--list", action="store_true", help="stream the objects as JSON lines")
    p.add_argument("--unrooted", action="store_true", help="count path-cycles as edge-set subgraphs")
    p.add_argument("--cap", type=int, default=10**9)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("bounds", help="CSV of every bound at (n, k)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--dps", type=int, default=20)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("bruteforce", help="maximum cycle count over a graph class")
    p.add_argument("--class", dest="cls", choices=["simple", "multi", "outdegree"], required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--cap", type=int, default=10**6)
    p.set_defaults(func=cmd_bruteforce)

    p = sub.add_parser("gen-adversarial", help="two-state lower-bound MDPs")
    p.add_argument("--kind", choices=["arbitrary", "maxgain"], required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--epsilon", default="1/10")
    p.add_argument("--seed", type=int, default=None, help="sample a non-canonical instance")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_gen_adversarial)

    p = sub.add_parser("run-pi", help="run policy iteration and print the trajectory")
    p.add_argument("--mdp", required=True)
    p.add_argument("--rule", default="howard",
                   help="howard | maxgain-simplex | maxgain-howard | lowest-howard | "
                        "highest-maxgain | scripted:FILE | random:SEED")
    p.add_argument("--init", default=None, help="comma-separated 0-based actions")
    p.set_defaults(func=cmd_run_pi)

    p = sub.add_parser("pidag", help="build the policy-improvement DAG")
    p.add_argument("--mdp", required=True)
    p.add_argument("--max-gain", action="store_true")
    p.add_argument("--dot", default=None)
    p.add_argument("--stats", action="store_true")
    p.add_argument("--cap", type=int, default=4096)
    p.set_defaults(func=cmd_pidag)

    p = sub.add_parser("audit", help="audit a recorded run on a deterministic MDP")
    p.add_argument("--mdp", required=True)
    p.add_argument("--trajectory", required=True)
    p.add_argument("--mode", choices=["arbitrary", "maxgain"], default="arbitrary")
    p.add_argument("--howard", action="store_true", help="also check the Howard length bound")
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("verify-2state", help="check the two-state DMDP upper bounds")
    p.add_argument("--kind", choices=["arbitrary", "maxgain"], required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--mode", type=_parse_mode, default=_parse_mode("exhaustive"))
    p.add_argument("--ties", action="store_true", help="draw rewards from {0, 1, 2}")
    p.set_defaults(func=cmd_verify_2state)

    p = sub.add_parser("verify-all", help="run the acceptance suite")
    p.add_argument("--profile", choices=["quick", "full"], default="quick")
    p.add_argument("--only", nargs="*", choices=sorted(CHECKS), default=None)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_verify_all)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
