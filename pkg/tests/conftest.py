from __future__ import annotations

import random
from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from picycles.digraph import Digraph
from picycles.mdp import Mdp, random_dmdp, random_mdp

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def multigraphs(draw, max_n: int = 5, max_mult: int = 3):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(n)]
    mult = {e: draw(st.integers(0, max_mult)) for e in pairs}
    return Digraph(n, mult)


@st.composite
def simple_graphs(draw, max_n: int = 5):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(n)]
    return Digraph(n, {e: 1 for e in pairs if draw(st.booleans())})


@st.composite
def dmdps(draw, max_n: int = 3, max_k: int = 3):
    n = draw(st.integers(1, max_n))
    k = draw(st.integers(1, max_k))
    seed = draw(st.integers(0, 10**6))
    return random_dmdp(random.Random(seed), n, k)


@st.composite
def mdps(draw, max_n: int = 3, max_k: int = 3):
    n = draw(st.integers(1, max_n))
    k = draw(st.integers(1, max_k))
    seed = draw(st.integers(0, 10**6))
    return random_mdp(random.Random(seed), n, k)


def policies_of(m: Mdp):
    return st.tuples(*[st.integers(0, m.k - 1) for _ in range(m.n)])


def frac(x) -> Fraction:
    return Fraction(x)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULT_LINES

    if RESULT_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(RESULT_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
