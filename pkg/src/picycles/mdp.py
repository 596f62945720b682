"""Exact finite MDPs: Bellman evaluation, action values, gains and policy improvement.

States and actions are 0-based. A policy is a tuple with one action per state.
Every quantity is a ``Fraction``; nothing here ever touches a float.
"""

from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from .linalg import solve

Policy = tuple[int, ...]


class MdpError(ValueError):
    pass


class InvalidImprovement(MdpError):
    pass


@dataclass(frozen=True, eq=False)
class Mdp:
    """``T[s][a]`` is a probability row over next states, ``R[s][a]`` the reward.

    ``next_state`` is set when every row is a unit vector (a deterministic MDP);
    ``T`` is still filled in so generic code never has to branch.
    """

    gamma: Fraction
    T: tuple
    R: tuple
    next_state: tuple | None = None

    def __post_init__(self):
        gamma = Fraction(self.gamma)
        object.__setattr__(self, "gamma", gamma)
        if not 0 <= gamma < 1:
            raise MdpError(f"gamma must lie in [0, 1), got {gamma}")
        n = len(self.T)
        if n < 1 or len(self.R) != n:
            raise MdpError("T and R must list the same non-empty set of states")
        k = len(self.T[0])
        T = tuple(tuple(tuple(Fraction(p) for p in row) for row in acts) for acts in self.T)
        R = tuple(tuple(Fraction(r) for r in acts) for acts in self.R)
        for s in range(n):
            if len(T[s]) != k or len(R[s]) != k:
                raise MdpError(f"state {s} does not have exactly {k} actions")
            for a, row in enumerate(T[s]):
                if len(row) != n:
                    raise MdpError(f"row ({s}, {a}) has length {len(row)}, expected {n}")
                if any(p < 0 or p > 1 for p in row) or sum(row) != 1:
                    raise MdpError(f"row ({s}, {a}) is not a probability distribution")
        object.__setattr__(self, "T", T)
        object.__setattr__(self, "R", R)
        if self.next_state is None:
            if all(max(row) == 1 for acts in T for row in acts):
                nxt = tuple(tuple(row.index(1) for row in acts) for acts in T)
                object.__setattr__(self, "next_state", nxt)
        else:
            nxt = tuple(tuple(int(t) for t in acts) for acts in self.next_state)
            for s in range(n):
                for a in range(k):
                    if T[s][a][nxt[s][a]] != 1:
                        raise MdpError(f"next_state ({s}, {a}) disagrees with T")
            object.__setattr__(self, "next_state", nxt)

    @classmethod
    def deterministic(cls, next_state: Sequence[Sequence[int]], R, gamma) -> Mdp:
        n = len(next_state)
        T = []
        for s, acts in enumerate(next_state):
            rows = []
            for t in acts:
                if not 0 <= t < n:
                    raise MdpError(f"state {s}: next state {t} out of range")
                row = [Fraction(0)] * n
                row[t] = Fraction(1)
                rows.append(tuple(row))
            T.append(tuple(rows))
        return cls(gamma, tuple(T), R, tuple(tuple(a) for a in next_state))

    @property
    def n(self) -> int:
        return len(self.T)

    @property
    def k(self) -> int:
        return len(self.T[0])

    @property
    def is_deterministic(self) -> bool:
        return self.next_state is not None

    def policies(self) -> Iterator[Policy]:
        return itertools.product(range(self.k), repeat=self.n)

    def check_policy(self, p: Sequence[int]) -> Policy:
        p = tuple(p)
        if len(p) != self.n or any(not 0 <= a < self.k for a in p):
            raise MdpError(f"{p} is not a policy for {self.n} states and {self.k} actions")
        return p


def default_policy(m: Mdp) -> Policy:
    return (0,) * m.n


def evaluate(m: Mdp, p: Sequence[int]) -> tuple[Fraction, ...]:
    """Solve V = R_p + gamma T_p V exactly."""
    p = m.check_policy(p)
    n, g = m.n, m.gamma
    a = [[(1 if i == j else 0) - g * m.T[i][p[i]][j] for j in range(n)] for i in range(n)]
    b = [m.R[i][p[i]] for i in range(n)]
    return tuple(solve(a, b))


def bellman_residual(m: Mdp, p: Sequence[int], v: Sequence[Fraction]) -> tuple[Fraction, ...]:
    return tuple(
        v[s] - m.R[s][p[s]] - m.gamma * sum(m.T[s][p[s]][t] * v[t] for t in range(m.n))
        for s in range(m.n)
    )


def q_value(m: Mdp, p, s: int, a: int, v=None) -> Fraction:
    if v is None:
        v = evaluate(m, p)
    if m.next_state is not None:
        return m.R[s][a] + m.gamma * v[m.next_state[s][a]]
    row = m.T[s][a]
    return m.R[s][a] + m.gamma * sum(row[t] * v[t] for t in range(m.n) if row[t])


def gain(m: Mdp, p, s: int, a: int, v=None) -> Fraction:
    if v is None:
        v = evaluate(m, p)
    return q_value(m, p, s, a, v) - v[s]


def gain_table(m: Mdp, p, v=None) -> list[list[Fraction]]:
    if v is None:
        v = evaluate(m, p)
    return [[gain(m, p, s, a, v) for a in range(m.k)] for s in range(m.n)]


def improvable_set(m: Mdp, p, v=None) -> set[tuple[int, int]]:
    table = gain_table(m, p, v)
    return {(s, a) for s in range(m.n) for a in range(m.k) if table[s][a] > 0}


def s_plus(m: Mdp, p, v=None) -> set[int]:
    return {s for s, _ in improvable_set(m, p, v)}


def a_plus(m: Mdp, p, s: int, v=None) -> set[int]:
    return {a for t, a in improvable_set(m, p, v) if t == s}


def _as_switch_map(switch) -> dict[int, int]:
    if isinstance(switch, Mapping):
        return dict(switch)
    out: dict[int, int] = {}
    for s, a in switch:
        if s in out and out[s] != a:
            raise InvalidImprovement(f"several actions given for state {s}")
        out[s] = a
    return out


def improve(m: Mdp, p, switch: Iterable[tuple[int, int]] | Mapping[int, int], check: bool = True,
            v=None) -> Policy:
    """Apply one policy-improvement step.

    ``switch`` lists (state, action) pairs, at most one per state, all drawn from
    the improvable set. With ``check`` the result is evaluated and the improvement
    guarantee (no state gets worse, every switched state gets strictly better) is
    asserted exactly.
    """
    p = m.check_policy(p)
    sw = _as_switch_map(switch)
    if not sw:
        raise InvalidImprovement("empty improvement set")
    if v is None:
        v = evaluate(m, p)
    for s, a in sw.items():
        if not (0 <= s < m.n and 0 <= a < m.k):
            raise InvalidImprovement(f"({s}, {a}) is not a state-action pair")
        if gain(m, p, s, a, v) <= 0:
            raise InvalidImprovement(f"({s}, {a}) is not an improving switch")
    q = tuple(sw.get(s, p[s]) for s in range(m.n))
    if check:
        w = evaluate(m, q)
        if any(w[s] < v[s] for s in range(m.n)) or any(w[s] <= v[s] for s in sw):
            raise AssertionError(f"policy improvement failed for {p} -> {q}")
    return q


class Order(enum.Enum):
    EQUAL = "equal"
    LESS = "less"
    GREATER = "greater"
    INCOMPARABLE = "incomparable"


def compare_values(v1, v2) -> Order:
    le = all(x <= y for x, y in zip(v1, v2))
    ge = all(x >= y for x, y in zip(v1, v2))
    if le and ge:
        return Order.EQUAL
    if le:
        return Order.LESS
    if ge:
        return Order.GREATER
    return Order.INCOMPARABLE


def compare(m: Mdp, p1, p2) -> Order:
    return compare_values(evaluate(m, p1), evaluate(m, p2))


# --- random instances --------------------------------------------------------

def random_rational(rng: random.Random, lo: int = -10, hi: int = 10, max_den: int = 6) -> Fraction:
    return Fraction(rng.randint(lo * max_den, hi * max_den), rng.randint(1, max_den))


def random_distribution(rng: random.Random, n: int, max_den: int = 8) -> tuple[Fraction, ...]:
    weights = [rng.randint(0, max_den) for _ in range(n)]
    if not any(weights):
        weights[rng.randrange(n)] = 1
    total = sum(weights)
    return tuple(Fraction(w, total) for w in weights)


def random_gamma(rng: random.Random, max_den: int = 20) -> Fraction:
    den = rng.randint(2, max_den)
    return Fraction(rng.randint(1, den - 1), den)


def random_mdp(rng: random.Random, n: int, k: int, gamma=None) -> Mdp:
    T = tuple(tuple(random_distribution(rng, n) for _ in range(k)) for _ in range(n))
    R = tuple(tuple(random_rational(rng) for _ in range(k)) for _ in range(n))
    return Mdp(random_gamma(rng) if gamma is None else gamma, T, R)


def random_dmdp(rng: random.Random, n: int, k: int, gamma=None, distinct_rewards: bool = False) -> Mdp:
    nxt = [[rng.randrange(n) for _ in range(k)] for _ in range(n)]
    if distinct_rewards:
        pool = rng.sample(range(-10 * n * k, 10 * n * k), n * k)
        R = [[Fraction(pool[s * k + a], rng.randint(1, 3)) for a in range(k)] for s in range(n)]
        # dividing can collide two values; redraw integers in that case
        if len({r for row in R for r in row}) < n * k:
            R = [[Fraction(pool[s * k + a]) for a in range(k)] for s in range(n)]
    else:
        R = [[random_rational(rng) for _ in range(k)] for _ in range(n)]
    return Mdp.deterministic(nxt, R, random_gamma(rng) if gamma is None else gamma)
