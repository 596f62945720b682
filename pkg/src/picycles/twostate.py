"""Two-state MDPs: adversarial lower-bound constructions and upper-bound checkers.

Policies here use the 1-based pair notation ``<i, j>``: action ``i`` at the
first state and action ``j`` at the second. ``as_policy`` converts to the
0-based tuples the rest of the package uses.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .bounds import TWO_STATE_MAXGAIN_BOUND, two_state_arbitrary_bound
from .mdp import Mdp, evaluate, gain
from .pi import SwitchingRule, build_pidag, longest_path, run_pi


def as_policy(i: int, j: int) -> tuple[int, int]:
    return (i - 1, j - 1)


def as_pair(p) -> tuple[int, int]:
    return (p[0] + 1, p[1] + 1)


@dataclass(frozen=True)
class TwoStateParams:
    """Self-transition probabilities ``lam*`` and rewards ``mu*``, index a-1 for action a."""

    gamma: Fraction
    lam1: tuple[Fraction, ...]
    lam2: tuple[Fraction, ...]
    mu1: tuple[Fraction, ...]
    mu2: tuple[Fraction, ...]

    @property
    def k(self) -> int:
        return len(self.lam1)

    def to_mdp(self) -> Mdp:
        T = (
            tuple((l, 1 - l) for l in self.lam1),
            tuple((1 - l, l) for l in self.lam2),
        )
        return Mdp(self.gamma, T, (self.mu1, self.mu2))


# --- closed forms ------------------------------------------------------------

def _denom(p: TwoStateParams, i, j):
    return 1 + p.gamma * (1 - p.lam1[i - 1] - p.lam2[j - 1])


def values_closed(p: TwoStateParams, i: int, j: int) -> tuple[Fraction, Fraction]:
    g = p.gamma
    l1, l2, m1, m2 = p.lam1[i - 1], p.lam2[j - 1], p.mu1[i - 1], p.mu2[j - 1]
    d = (1 - g) * _denom(p, i, j)
    v1 = (m1 * (1 - g * l2) + m2 * g * (1 - l1)) / d
    v2 = (m2 * (1 - g * l1) + m1 * g * (1 - l2)) / d
    return v1, v2


def gain_closed(p: TwoStateParams, i: int, j: int, state: int, action: int) -> Fraction:
    """Gain of switching ``state`` (1 or 2) to ``action`` under policy <i, j>."""
    g, d = p.gamma, _denom(p, i, j)
    spread = p.mu1[i - 1] - p.mu2[j - 1]
    if state == 1:
        return p.mu1[action - 1] - p.mu1[i - 1] + g * (p.lam1[action - 1] - p.lam1[i - 1]) * spread / d
    if state == 2:
        return p.mu2[action - 1] - p.mu2[j - 1] - g * (p.lam2[action - 1] - p.lam2[j - 1]) * spread / d
    raise ValueError("state must be 1 or 2")


# --- Hamiltonian construction (arbitrary action selection) -------------------

def next_arbitrary(k: int, i: int, j: int) -> tuple[int, int]:
    if not (1 <= i <= k and 1 <= j <= k):
        raise ValueError(f"<{i}, {j}> is not a policy for k={k}")
    if (i, j) == (1, 1):
        raise ValueError("<1, 1> is the last policy and has no successor")
    if i > j:
        return (i, j + 1)
    if i == j:
        return (1, j)
    if i < j - 1:
        return (i + 1, j)
    return (i, 1)


def arbitrary_sequence(k: int) -> list[tuple[int, int]]:
    seq = [(k, 1)]
    while seq[-1] != (1, 1):
        seq.append(next_arbitrary(k, *seq[-1]))
    return seq


def _mu2_ceiling(gamma, lam1, lam2, mu1, mu2, a):
    # mu2[a+1] must keep the row moves <i, a+1> -> <i+1, a+1> and the reset
    # <a, a+1> -> <a, 1> improving; a is 1-based
    lam1 = (None,) + lam1
    lam2 = (None,) + lam2
    mu1 = (None,) + mu1
    mu2 = (None,) + mu2
    cands = [
        mu1[i] + (mu1[i + 1] - mu1[i]) * (1 + gamma * (1 - lam1[i] - lam2[a + 1]))
        / (gamma * (lam1[i + 1] - lam1[i]))
        for i in range(1, a)
    ]
    cands.append(
        (mu2[1] * (1 + gamma * (1 - lam1[a] - lam2[a + 1])) + gamma * (lam2[a + 1] - lam2[1]) * mu1[a])
        / (1 + gamma * (1 - lam1[a] - lam2[1]))
    )
    return min(cands)


def _mu1_ceiling(gamma, lam1, lam2, mu1, mu2, a):
    # mu1[a+1] must keep the column moves <a+1, j> -> <a+1, j+1> and the reset
    # <a+1, a+1> -> <1, a+1> improving; mu2 already holds entry a+1
    lam1 = (None,) + lam1
    lam2 = (None,) + lam2
    mu1 = (None,) + mu1
    mu2 = (None,) + mu2
    cands = [
        mu2[j] + (mu2[j + 1] - mu2[j]) * (1 + gamma * (1 - lam1[a + 1] - lam2[j]))
        / (gamma * (lam2[j + 1] - lam2[j]))
        for j in range(1, a + 1)
    ]
    cands.append(
        (mu1[1] * (1 + gamma * (1 - lam1[a + 1] - lam2[a + 1])) + gamma * (lam1[a + 1] - lam1[1]) * mu2[a + 1])
        / (1 + gamma * (1 - lam1[1] - lam2[a + 1]))
    )
    return min(cands)


def _sample_open(rng: random.Random, lo: Fraction, hi: Fraction, max_den: int = 10**6) -> Fraction:
    """A rational strictly inside (lo, hi) with bounded denominator where possible."""
    while True:
        x = Fraction(rng.randint(1, max_den - 1), max_den)
        y = lo + (hi - lo) * x
        z = y.limit_denominator(max_den)
        if lo < z < hi:
            return z
        if lo < y < hi:
            return y


def gen_arbitrary_params(k: int, seed: int | None = None) -> TwoStateParams:
    """Parameters for the k^2-step Hamiltonian instance.

    ``seed=None`` gives the canonical instance: gamma 9/10, self-transition
    a/(k+1) for both states, zero reward for action 1 and every later reward one
    below its ceiling. A seed samples each free choice from its open interval.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    rng = random.Random(seed)
    if seed is None:
        gamma = Fraction(9, 10)
        lam1 = tuple(Fraction(a, k + 1) for a in range(1, k + 1))
        lam2 = lam1
        mu1, mu2 = (Fraction(0),), (Fraction(0),)
    else:
        gamma = _sample_open(rng, Fraction(0), Fraction(1))
        l1 = [_sample_open(rng, Fraction(0), Fraction(1))]
        l2 = [_sample_open(rng, Fraction(0), Fraction(1))]
        for _ in range(k - 1):
            l1.append(_sample_open(rng, l1[-1], Fraction(1)))
            l2.append(_sample_open(rng, l2[-1], Fraction(1)))
        lam1, lam2 = tuple(l1), tuple(l2)
        mu1 = (Fraction(rng.randint(-10, 10)),)
        mu2 = (Fraction(rng.randint(-10, 10)),)

    def slack():
        return Fraction(1) if seed is None else _sample_open(rng, Fraction(0), Fraction(10))

    for a in range(1, k):
        top2 = _mu2_ceiling(gamma, lam1, lam2, mu1, mu2, a)
        mu2 = mu2 + (top2 - slack(),)
        top1 = _mu1_ceiling(gamma, lam1, lam2, mu1, mu2, a)
        mu1 = mu1 + (top1 - slack(),)
    return TwoStateParams(gamma, lam1, lam2, mu1, mu2)


def gen_arbitrary(k: int, seed: int | None = None) -> Mdp:
    return gen_arbitrary_params(k, seed).to_mdp()


# --- max-gain construction ---------------------------------------------------

def next_maxgain(k: int, i: int, j: int) -> tuple[int, int]:
    if i < k and j == 1:
        return (i + 1, j)
    if i == k and j < k:
        return (i, j + 1)
    raise ValueError(f"<{i}, {j}> has no successor in the max-gain sequence")


def maxgain_sequence(k: int) -> list[tuple[int, int]]:
    seq = [(1, 1)]
    while seq[-1] != (k, k):
        seq.append(next_maxgain(k, *seq[-1]))
    return seq


def gen_maxgain_params(k: int, epsilon: Fraction = Fraction(1, 10)) -> TwoStateParams:
    epsilon = Fraction(epsilon)
    if k < 2:
        raise ValueError("k must be >= 2")
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    base = 2 + epsilon
    gamma = 1 - 1 / (k * base ** (k - 1))
    lam = [Fraction(1)] + [
        (1 - Fraction(k - a + 1) / (k * base ** (a - 1))) / gamma for a in range(2, k + 1)
    ]
    mu1 = [Fraction(0)] + [Fraction(a * (k - a + 1)) / (k * base ** (a - 1)) for a in range(2, k + 1)]
    mu2 = [k * m for m in mu1]
    return TwoStateParams(gamma, tuple(lam), tuple(lam), tuple(mu1), tuple(mu2))


def gen_maxgain(k: int, epsilon: Fraction = Fraction(1, 10)) -> Mdp:
    return gen_maxgain_params(k, epsilon).to_mdp()


# --- scripted runs -----------------------------------------------------------

def _stepper(next_fn, k):
    def step(p):
        pair = as_pair(p)
        try:
            return as_policy(*next_fn(k, *pair))
        except ValueError:
            return None
    return step


def run_arbitrary_script(m: Mdp, k: int):
    """Follow the Hamiltonian sequence from <k, 1>; every step is validated."""
    return run_pi(m, as_policy(k, 1), SwitchingRule.scripted(_stepper(next_arbitrary, k)))


def run_maxgain_script(m: Mdp, k: int, finish: bool = False):
    """Follow the 2k-1 sequence from <1, 1>, requiring each move to be a max-gain action.

    With ``finish`` the run continues past <k, k> with max-gain Howard steps
    until no improving action is left.
    """
    fallback = SwitchingRule.howard() if finish else None
    rule = SwitchingRule("scripted", "max_gain", script=_stepper(next_maxgain, k), fallback=fallback)
    return run_pi(m, as_policy(1, 1), rule)


def step_is_maxgain(m: Mdp, p, q) -> bool:
    """True iff every action switched on p -> q has the largest gain at its state."""
    v = evaluate(m, p)
    for s in range(m.n):
        if p[s] != q[s]:
            gains = [gain(m, p, s, a, v) for a in range(m.k)]
            if gains[q[s]] <= 0 or gains[q[s]] != max(gains):
                return False
    return True


# --- upper-bound checkers ----------------------------------------------------

@dataclass
class TwoStateReport:
    kind: str
    k: int
    instances: int = 0
    bound: float | int = 0
    max_observed: int = 0
    worst: dict | None = None
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "kind": self.kind, "k": self.k, "instances": self.instances,
            "bound": self.bound, "max_observed": self.max_observed, "ok": self.ok,
            "worst": self.worst, "violations": self.violations[:10],
        }


def _structures(k: int):
    for bits in itertools.product((0, 1), repeat=2 * k):
        yield [list(bits[:k]), list(bits[k:])]


def _distinct_rewards(rng: random.Random, k: int, spread: int = 1000) -> list[list[Fraction]]:
    pool = rng.sample(range(-spread, spread), 2 * k)
    den = rng.randint(1, 7)
    return [[Fraction(x, den) for x in pool[:k]], [Fraction(x, den) for x in pool[k:]]]


def _tied_rewards(rng: random.Random, k: int) -> list[list[Fraction]]:
    return [[Fraction(rng.randint(0, 2)) for _ in range(k)] for _ in range(2)]


def _instances(k: int, mode: str, trials: int, seed: int, samples_per_structure: int, ties: bool):
    rng = random.Random(seed)
    draw = _tied_rewards if ties else _distinct_rewards
    if mode == "exhaustive":
        for nxt in _structures(k):
            for _ in range(samples_per_structure):
                gamma = Fraction(rng.randint(1, 99), 100)
                yield Mdp.deterministic(nxt, draw(rng, k), gamma)
    elif mode == "random":
        for _ in range(trials):
            nxt = [[rng.randrange(2) for _ in range(k)] for _ in range(2)]
            gamma = Fraction(rng.randint(1, 999), 1000)
            yield Mdp.deterministic(nxt, draw(rng, k), gamma)
    else:
        raise ValueError(f"unknown mode {mode!r}")


def _verify(kind: str, k: int, mode: str, trials: int, seed: int, samples_per_structure: int,
            ties: bool) -> TwoStateReport:
    max_gain_only = kind == "maxgain"
    bound = TWO_STATE_MAXGAIN_BOUND if max_gain_only else two_state_arbitrary_bound(k)
    limit = math.floor(bound)
    rep = TwoStateReport(kind, k, bound=float(bound) if isinstance(bound, Fraction) else bound)
    for m in _instances(k, mode, trials, seed, samples_per_structure, ties):
        d = build_pidag(m, max_gain_only=max_gain_only)
        length, path = longest_path(d)
        rep.instances += 1
        if length > rep.max_observed or length > limit:
            record = {
                "next": [list(r) for r in m.next_state],
                "R": [[str(x) for x in r] for r in m.R],
                "gamma": str(m.gamma),
                "path": [list(as_pair(p)) for p in path],
            }
            if length > rep.max_observed:
                rep.max_observed, rep.worst = length, record
            if length > limit:
                rep.violations.append(record)
    return rep


def verify_arbitrary_ub(k: int, mode: str = "exhaustive", trials: int = 1000, seed: int = 0,
                        samples_per_structure: int = 50, ties: bool = False) -> TwoStateReport:
    """Longest path in the full improvement DAG of 2-state k-action DMDPs."""
    return _verify("arbitrary", k, mode, trials, seed, samples_per_structure, ties)


def verify_maxgain_ub(k: int, mode: str = "exhaustive", trials: int = 1000, seed: int = 0,
                      samples_per_structure: int = 50, ties: bool = False) -> TwoStateReport:
    """Longest path in the max-gain improvement DAG of 2-state k-action DMDPs."""
    return _verify("maxgain", k, mode, trials, seed, samples_per_structure, ties)
