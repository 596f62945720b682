"""The acceptance checks, runnable as one suite (``picycles verify-all``).

Each check returns a ``CheckResult``; nothing raises on a failed criterion, so
a report always lists every check. The Full profile runs the stated sizes;
Quick trims the randomized parts so the whole suite fits in about a minute.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable

from .bounds import BoundValue, TWO_STATE_MAXGAIN_BOUND, two_state_arbitrary_bound
from .cycles import count_cycles, n1, n2
from .digraph import (H1, H2, find_subgraph, enumerate_two_regular_simple, is_isomorphic,
                      not_in_contractible_edges, weak_components)
from .dmdp import audit_trajectory, to_graph
from .extremal import (brute_fk, brute_mk, ceil_alpha_power, cycles_gexample_closed,
                       cycles_gnk_closed, cycles_gpnk_closed, gen_gexample, gen_gn, gen_gnk, gen_gpnk)
from .mdp import (Mdp, bellman_residual, evaluate, gain, improvable_set, improve, random_dmdp,
                  random_mdp)
from .pi import PiTrajectory, SwitchingRule, build_pidag, longest_path, run_pi
from .twostate import (TwoStateParams, arbitrary_sequence, as_pair, as_policy, gain_closed,
                       gen_arbitrary_params, gen_maxgain_params, maxgain_sequence,
                       run_arbitrary_script, run_maxgain_script, values_closed,
                       verify_arbitrary_ub, verify_maxgain_ub)

PROFILES = ("quick", "full")

# visitation index of policy <row, column> in the published k=5 Hamiltonian figure
FIGURE_ARBITRARY_ORDER = (
    (24, 23, 19, 13, 5),
    (21, 22, 20, 14, 6),
    (16, 17, 18, 15, 7),
    (9, 10, 11, 12, 8),
    (0, 1, 2, 3, 4),
)
FIGURE_ARBITRARY_MU1 = (0, -10.6667, -710.741, -26078.3, -424201)
FIGURE_ARBITRARY_MU2 = (0, -1, -93.4444, -4678.83, -119094)
FIGURE_MAXGAIN_GAMMA = 0.989716
FIGURE_MAXGAIN_LAMBDA = (1, 0.62548, 0.872923, 0.96675, 1)
FIGURE_MAXGAIN_MU1 = (0, 0.761905, 0.408163, 0.172768, 0.0514189)


@dataclass
class CheckResult:
    name: str
    status: str = "pass"          # pass | fail | skipped
    observed: object = None
    bound: object = None
    runtime: float = 0.0
    time_limit: float | None = None
    detail: list[str] = field(default_factory=list)

    def fail(self, msg: str):
        self.status = "fail"
        self.detail.append(msg)

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def line(self) -> str:
        tag = self.status.upper()
        extra = f" observed={self.observed}" if self.observed is not None else ""
        extra += f" bound={self.bound}" if self.bound is not None else ""
        msg = f"[{tag}] {self.name} ({self.runtime:.2f}s){extra}"
        if self.detail and not self.passed:
            msg += " :: " + "; ".join(self.detail[:3])
        return msg


@dataclass
class SuiteReport:
    profile: str
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    @property
    def exit_code(self) -> int:
        return 0 if self.ok else 1

    def to_dict(self) -> dict:
        return {"profile": self.profile, "ok": self.ok,
                "checks": [asdict(c) for c in self.checks]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, default=str)


def _rel_close(x, ref, tol):
    x, ref = float(x), float(ref)
    if ref == 0:
        return abs(x) <= tol
    return abs(x - ref) <= tol * abs(ref)


# --- individual criteria -----------------------------------------------------

def check_figure_arbitrary(profile: str = "full") -> CheckResult:
    res = CheckResult("figure-arbitrary", time_limit=1.0)
    p = gen_arbitrary_params(5)
    if p.gamma != Fraction(9, 10):
        res.fail(f"gamma {p.gamma} != 9/10")
    want_lam = tuple(Fraction(a, 6) for a in range(1, 6))
    if p.lam1 != want_lam or p.lam2 != want_lam:
        res.fail("self-transition probabilities are not a/6")
    if p.mu1[1] != Fraction(-32, 3):
        res.fail(f"mu1[2] = {p.mu1[1]}, expected -32/3")
    for a in range(5):
        for got, ref, tag in ((p.mu1[a], FIGURE_ARBITRARY_MU1[a], "mu1"), (p.mu2[a], FIGURE_ARBITRARY_MU2[a], "mu2")):
            if not _rel_close(got, ref, 1e-3):
                res.fail(f"{tag}[{a + 1}] = {float(got):.6g}, figure {ref}")
    t = run_arbitrary_script(p.to_mdp(), 5)
    visited = [as_pair(q) for q in t.policies]
    order = [FIGURE_ARBITRARY_ORDER[i - 1][j - 1] for i, j in visited]
    res.observed = len(visited)
    res.bound = 25
    if order != list(range(25)):
        res.fail(f"visitation order {order} differs from the figure")
    return res


def check_figure_maxgain(profile: str = "full") -> CheckResult:
    res = CheckResult("figure-maxgain", time_limit=1.0)
    p = gen_maxgain_params(5, Fraction(1, 10))
    tol = 1e-5
    if abs(float(p.gamma) - FIGURE_MAXGAIN_GAMMA) > tol:
        res.fail(f"gamma {float(p.gamma)} vs {FIGURE_MAXGAIN_GAMMA}")
    for a in range(5):
        if abs(float(p.lam1[a]) - FIGURE_MAXGAIN_LAMBDA[a]) > tol or p.lam2[a] != p.lam1[a]:
            res.fail(f"lambda[{a + 1}] = {float(p.lam1[a])}")
        if abs(float(p.mu1[a]) - FIGURE_MAXGAIN_MU1[a]) > tol:
            res.fail(f"mu1[{a + 1}] = {float(p.mu1[a])}")
        if p.mu2[a] != 5 * p.mu1[a]:
            res.fail(f"mu2[{a + 1}] != 5 mu1[{a + 1}]")
    m = p.to_mdp()
    # the scripted state choice with max-gain actions, continued by max-gain
    # Howard steps until no state can improve
    t = run_maxgain_script(m, 5, finish=True)
    visited = [as_pair(q) for q in t.policies]
    res.observed = {"policies": len(visited), "final": visited[-1]}
    res.bound = {"policies": 9, "final": (5, 5)}
    if visited[:9] != maxgain_sequence(5):
        res.fail(f"prefix {visited[:9]} is not the 9-policy max-gain sequence")
    if improvable_set(m, as_policy(5, 5)):
        imp = sorted((s + 1, a + 1) for s, a in improvable_set(m, as_policy(5, 5)))
        res.fail(f"<5, 5> is not optimal: improving pairs {imp}")
    if len(visited) != 9:
        res.fail(f"the max-gain run visits {len(visited)} policies and ends at {visited[-1]}")
    return res


def check_hamiltonian(profile: str = "full") -> CheckResult:
    res = CheckResult("hamiltonian-lower-bound", time_limit=5.0)
    seen = {}
    for k in range(2, 7):
        p = gen_arbitrary_params(k)
        m = p.to_mdp()
        t = run_arbitrary_script(m, k)
        visited = [as_pair(q) for q in t.policies]
        seen[k] = len(visited)
        if len(visited) != k * k or len(set(visited)) != k * k:
            res.fail(f"k={k}: visited {len(visited)} policies")
        if visited != arbitrary_sequence(k):
            res.fail(f"k={k}: run left the scripted sequence")
        for (i, j), (i2, j2) in zip(visited, visited[1:]):
            state, action = (1, i2) if i2 != i else (2, j2)
            if (i != i2) + (j != j2) != 1 or gain_closed(p, i, j, state, action) <= 0:
                res.fail(f"k={k}: <{i},{j}> -> <{i2},{j2}> is not a single improving switch")
        if improvable_set(m, as_policy(1, 1)):
            res.fail(f"k={k}: <1, 1> is not optimal")
    res.observed = seen
    res.bound = {k: k * k for k in seen}
    return res


def check_extremal_counts(profile: str = "full") -> CheckResult:
    res = CheckResult("extremal-cycle-counts", time_limit=30.0)
    checked = 0
    for n in range(3, 10):
        for k in range(2, 5):
            c = count_cycles(gen_gnk(n, k))
            if not (c == cycles_gnk_closed(n, k) == ceil_alpha_power(k, n)):
                res.fail(f"G_({n},{k}): {c}, closed {cycles_gnk_closed(n, k)}, ceil {ceil_alpha_power(k, n)}")
            c2 = count_cycles(gen_gpnk(n, k))
            if c2 != cycles_gpnk_closed(n, k):
                res.fail(f"G'_({n},{k}): {c2}, closed {cycles_gpnk_closed(n, k)}")
            checked += 2
    for n in range(3, 21):
        for k in range(2, 9):
            if cycles_gnk_closed(n, k) < cycles_gpnk_closed(n, k):
                res.fail(f"ordering fails at n={n}, k={k}")
    res.observed = f"{checked} graphs enumerated"
    return res


def check_gexample(profile: str = "full") -> CheckResult:
    res = CheckResult("gexample-formula", time_limit=30.0)
    got = {}
    for l, k in ((1, 2), (1, 3), (2, 2)):
        c = count_cycles(gen_gexample(l, k))
        got[(l, k)] = c
        if c != cycles_gexample_closed(l, k):
            res.fail(f"({l},{k}): enumerated {c}, closed form {cycles_gexample_closed(l, k)}")
    if got[(1, 2)] != 5:
        res.fail("G_example(1,2) should have 5 cycles")
    res.observed = {f"{l},{k}": c for (l, k), c in got.items()}
    return res


def check_bruteforce(profile: str = "full") -> CheckResult:
    res = CheckResult("bruteforce-maxima", time_limit=600.0)
    rng = [(n, 2) for n in range(1, 5)] + [(n, 3) for n in range(1, 4)]
    table = {}
    if brute_mk(3, 2) != 5:
        res.fail(f"M_2(3) = {brute_mk(3, 2)}")
    for n, k in rng:
        mk, fk = brute_mk(n, k), brute_fk(n, k)
        table[f"{n},{k}"] = (mk, fk)
        if not BoundValue("MkBound", n, k).admits(mk):
            res.fail(f"M_{k}({n}) = {mk} exceeds (k+1)!^(n/(k+1))")
        if not ceil_alpha_power(k, n) <= fk:
            res.fail(f"F_{k}({n}) = {fk} below ceil(alpha^n)")
        if not BoundValue("FkUpper", n, k).admits(fk):
            res.fail(f"F_{k}({n}) = {fk} above 5 alpha^n")
    for k in (2, 3):
        if brute_fk(1, k) != k:
            res.fail(f"F_{k}(1) = {brute_fk(1, k)}")
    if brute_fk(2, 2) != 4:
        res.fail(f"F_2(2) = {brute_fk(2, 2)}")
    res.observed = table
    return res


def _trajectory_from_path(d, path) -> PiTrajectory:
    return PiTrajectory(list(path), [d.values[p] for p in path])


def check_dmdp_theorems(profile: str = "full") -> CheckResult:
    res = CheckResult("dmdp-length-theorems", time_limit=300.0)
    count = 500 if profile == "full" else 60
    rng = random.Random(20240607)
    audits = 0
    worst_ratio = {"arbitrary": 0.0, "maxgain": 0.0}
    for i in range(count):
        n, k = rng.choice((2, 3)), rng.choice((2, 3))
        m = random_dmdp(rng, n, k, distinct_rewards=rng.random() < 0.5)
        g = to_graph(m).graph
        a, b = n1(g, k), n2(g, k)
        full, mg = build_pidag(m), build_pidag(m, max_gain_only=True)
        l_full, p_full = longest_path(full)
        l_mg, p_mg = longest_path(mg)
        if l_full > k * n * a:
            res.fail(f"instance {i}: full DAG path {l_full} > kn N1 = {k * n * a}")
        if l_mg > (n + 1) * b:
            res.fail(f"instance {i}: max-gain DAG path {l_mg} > (n+1) N2 = {(n + 1) * b}")
        worst_ratio["arbitrary"] = max(worst_ratio["arbitrary"], l_full / (k * n * a))
        worst_ratio["maxgain"] = max(worst_ratio["maxgain"], l_mg / ((n + 1) * b))
        runs = [
            (run_pi(m, None, SwitchingRule.howard()), "maxgain"),
            (run_pi(m, None, SwitchingRule.max_gain_simplex()), "maxgain"),
            (run_pi(m, None, SwitchingRule("all", "lowest")), "arbitrary"),
            (run_pi(m, None, SwitchingRule.seeded_random(i)), "arbitrary"),
            (_trajectory_from_path(full, p_full), "arbitrary"),
            (_trajectory_from_path(mg, p_mg), "maxgain"),
        ]
        for t, mode in runs:
            modes = ("arbitrary", "maxgain") if mode == "maxgain" else ("arbitrary",)
            for md in modes:
                rep = audit_trajectory(m, t, md)
                audits += 1
                if not rep.ok:
                    res.fail(f"instance {i} ({md}): {rep.failures}")
    res.observed = {"instances": count, "audits": audits,
                    "max_ratio": {k: round(v, 4) for k, v in worst_ratio.items()}}
    res.bound = 1.0
    return res


def check_two_state_bounds(profile: str = "full") -> CheckResult:
    res = CheckResult("two-state-upper-bounds", time_limit=600.0)
    trials = 10_000 if profile == "full" else 300
    seen = {}
    for verify in (verify_arbitrary_ub, verify_maxgain_ub):
        reports = [verify(2, "exhaustive", seed=1), verify(2, "exhaustive", seed=2, ties=True)]
        for k in (3, 4, 5):
            reports.append(verify(k, "random", trials=trials, seed=100 + k))
            reports.append(verify(k, "random", trials=max(trials // 10, 30), seed=200 + k, ties=True))
        for rep in reports:
            key = f"{rep.kind}-k{rep.k}"
            seen[key] = max(seen.get(key, 0), rep.max_observed)
            if not rep.ok:
                res.fail(f"{key}: {len(rep.violations)} instances above {rep.bound}")
    res.observed = seen
    res.bound = {f"arbitrary-k{k}": float(two_state_arbitrary_bound(k)) for k in (2, 3, 4, 5)}
    res.bound["maxgain"] = TWO_STATE_MAXGAIN_BOUND
    return res


def _random_params(rng: random.Random, k: int) -> TwoStateParams:
    def prob():
        return Fraction(rng.randint(0, 12), 12)

    def rew():
        return Fraction(rng.randint(-30, 30), rng.randint(1, 5))

    den = rng.randint(2, 30)
    return TwoStateParams(
        Fraction(rng.randint(0, den - 1), den),
        tuple(prob() for _ in range(k)), tuple(prob() for _ in range(k)),
        tuple(rew() for _ in range(k)), tuple(rew() for _ in range(k)),
    )


def check_exactness(profile: str = "full") -> CheckResult:
    res = CheckResult("exactness-core", time_limit=120.0)
    rng = random.Random(77)
    count = 1000 if profile == "full" else 200
    improve_calls = 0
    for i in range(count):
        n, k = rng.randint(2, 4), rng.randint(2, 4)
        m = random_mdp(rng, n, k)
        p = tuple(rng.randrange(k) for _ in range(n))
        v = evaluate(m, p)
        if any(bellman_residual(m, p, v)):
            res.fail(f"mdp {i}: nonzero Bellman residual")
        imp = sorted(improvable_set(m, p, v))
        if imp:
            by_state: dict[int, list[int]] = {}
            for s, a in imp:
                by_state.setdefault(s, []).append(a)
            chosen = rng.sample(sorted(by_state), rng.randint(1, len(by_state)))
            sw = {s: rng.choice(by_state[s]) for s in chosen}
            try:
                improve(m, p, sw, check=True, v=v)
                improve_calls += 1
            except AssertionError as exc:
                res.fail(f"mdp {i}: {exc}")
    for i in range(count):
        k = rng.randint(2, 4)
        p = _random_params(rng, k)
        m = p.to_mdp()
        for a1 in range(1, k + 1):
            for a2 in range(1, k + 1):
                pol = as_policy(a1, a2)
                v = evaluate(m, pol)
                if tuple(v) != values_closed(p, a1, a2):
                    res.fail(f"2-state {i}: value mismatch at <{a1},{a2}>")
                for b in range(1, k + 1):
                    if gain(m, pol, 0, b - 1, v) != gain_closed(p, a1, a2, 1, b) or \
                            gain(m, pol, 1, b - 1, v) != gain_closed(p, a1, a2, 2, b):
                        res.fail(f"2-state {i}: gain mismatch at <{a1},{a2}>")
    res.observed = {"mdps": count, "two_state": count, "improve_calls": improve_calls}
    return res


def _is_gm_union(g) -> bool:
    comps = weak_components(g)
    for comp in comps:
        if len(comp) < 4 or not is_isomorphic(g.induced(comp), gen_gn(len(comp))):
            return False
    return True


def check_structure(profile: str = "full") -> CheckResult:
    res = CheckResult("lemma-structure", time_limit=300.0)
    stats = {}
    for n in (4, 5):
        total = tight = 0
        for g in enumerate_two_regular_simple(n):
            if find_subgraph(g, H1) is not None or find_subgraph(g, H2) is not None:
                continue
            total += 1
            bad = len(not_in_contractible_edges(g))
            union = _is_gm_union(g)
            tight += bad == n
            if bad > n:
                res.fail(f"n={n}: {bad} not in-contractible edges")
            if (bad == n) != union:
                res.fail(f"n={n}: equality {bad == n} but G_m union {union} for {sorted(g.mult)}")
        stats[n] = {"graphs": total, "tight": tight}
    res.observed = stats
    return res


CHECKS: dict[str, Callable[[str], CheckResult]] = {
    "figure-arbitrary": check_figure_arbitrary,
    "figure-maxgain": check_figure_maxgain,
    "hamiltonian-lower-bound": check_hamiltonian,
    "extremal-cycle-counts": check_extremal_counts,
    "gexample-formula": check_gexample,
    "bruteforce-maxima": check_bruteforce,
    "dmdp-length-theorems": check_dmdp_theorems,
    "two-state-upper-bounds": check_two_state_bounds,
    "exactness-core": check_exactness,
    "lemma-structure": check_structure,
}


def run_check(name: str, profile: str = "full") -> CheckResult:
    t0 = time.perf_counter()
    try:
        res = CHECKS[name](profile)
    except Exception as exc:  # a crash is reported, not raised
        res = CheckResult(name)
        res.fail(f"{type(exc).__name__}: {exc}")
    res.runtime = time.perf_counter() - t0
    if res.time_limit is not None and profile == "full" and res.runtime > res.time_limit:
        res.fail(f"took {res.runtime:.1f}s, limit {res.time_limit}s")
    return res


def verify_all(profile: str = "quick", only: list[str] | None = None, workers: int = 1) -> SuiteReport:
    if profile not in PROFILES:
        raise ValueError(f"profile must be one of {PROFILES}")
    names = only or list(CHECKS)
    report = SuiteReport(profile)
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(workers) as pool:
            report.checks = list(pool.map(run_check, names, [profile] * len(names)))
    else:
        report.checks = [run_check(name, profile) for name in names]
    return report
