"""Small hand-built instances shared by several test modules."""

from __future__ import annotations

from fractions import Fraction as F

from picycles.mdp import Mdp

# Three states, two actions, gamma 9/10. Action 0 of state 0 is a rewarding
# self-loop; the rest mix. Rewards are expected one-step rewards.
AUSO = Mdp(
    F(9, 10),
    (
        ((1, 0, 0), (F(1, 4), F(1, 2), F(1, 4))),
        ((F(1, 2), 0, F(1, 2)), (0, 1, 0)),
        ((F(1, 2), F(1, 2), 0), (0, 1, 0)),
    ),
    (
        (3, F(1, 4) * 2 + F(1, 2) * 3 + F(1, 4) * 3),
        (2, 3),
        (F(1, 2) * 3 + F(1, 2) * 1, 3),
    ),
)


def _bits(s):
    return tuple(int(c) for c in s)


AUSO_EDGES = {
    (_bits(a), _bits(b)) for a, b in [
        ("000", "010"), ("000", "001"), ("001", "011"), ("010", "011"), ("100", "000"),
        ("100", "101"), ("100", "110"), ("101", "001"), ("101", "111"), ("110", "010"),
        ("110", "111"), ("111", "011"), ("101", "011"), ("110", "011"), ("100", "001"),
        ("100", "010"), ("100", "011"), ("000", "011"), ("100", "111"),
    ]
}
