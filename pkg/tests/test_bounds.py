from __future__ import annotations

import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from picycles.bounds import (
    BOUND_NAMES, BoundValue, TWO_STATE_MAXGAIN_BOUND, all_bounds, two_state_arbitrary_bound,
)


def direct(name, n, k):
    """Each bound straight from its formula in floating point at high precision."""
    with mpmath.workdps(60):
        a = (k - 1 + mpmath.sqrt((k - 1) ** 2 + 4)) / 2
        f = mpmath.mpf(math.factorial(k + 1))
        return {
            "MkBound": f ** (mpmath.mpf(n) / (k + 1)),
            "FkUpper": 5 * a ** n,
            "FkLower": mpmath.ceil(a ** n),
            "StarBound": (k - 2 + mpmath.cbrt(6)) ** n,
            "N1Bound": 5 * n * n * k * a ** (n - 1),
            "N2Bound": n * n * k * f ** (mpmath.mpf(n - 1) / (k + 1)),
            "ArbitraryPiBound": 5 * n ** 3 * k * k * a ** (n - 1),
            "MaxGainPiBound": (n + 1) * n * n * k * f ** (mpmath.mpf(n - 1) / (k + 1)),
            "HowardBound": n * n * k * f ** (mpmath.mpf(n - 1) / (k + 1)) + 1,
        }[name]


def test_examples():
    assert BoundValue("MkBound", 3, 2).exact() == 6
    assert BoundValue("FkUpper", 0, 5).exact() == 5
    assert abs(float(BoundValue("StarBound", 2, 2).value()) - 3.3019) < 1e-3
    assert BoundValue("FkLower", 5, 2).exact() == 12


@given(st.sampled_from(BOUND_NAMES), st.integers(0, 25), st.integers(2, 7))
def test_value_matches_formula(name, n, k):
    with mpmath.workdps(60):
        got = BoundValue(name, n, k).value(50)
        want = direct(name, n, k)
        assert abs(got - want) <= mpmath.mpf(10) ** -25 * max(1, abs(want))


@given(st.sampled_from(BOUND_NAMES), st.integers(0, 20), st.integers(2, 6))
def test_nonnegative_and_monotone(name, n, k):
    lo, hi = BoundValue(name, n, k).value(40), BoundValue(name, n + 1, k).value(40)
    assert lo >= 0
    assert hi >= lo


@given(st.sampled_from(BOUND_NAMES), st.integers(1, 12), st.integers(2, 5))
def test_admits_is_exact_at_the_boundary(name, n, k):
    if name == "StarBound":
        return
    b = BoundValue(name, n, k)
    fl = b.exact() if b.is_integer() else b.exact().floor()
    assert b.admits(fl)
    if b.is_integer():
        assert not b.admits(fl + 1)
    else:
        assert not b.admits(fl + 1) or b.exact() == fl + 1
        assert not b.admits(Fraction(b.exact().ceil()) + Fraction(1, 10**12))


def test_mk_bound_is_integer_when_power_is():
    # 3!^(6/3) = 36 exactly
    assert BoundValue("MkBound", 6, 2).admits(36)
    assert not BoundValue("MkBound", 6, 2).admits(37)


def test_errors():
    with pytest.raises(ValueError):
        BoundValue("Nope", 3, 2)
    with pytest.raises(ValueError):
        BoundValue("MkBound", 3, 1)


def test_all_bounds_lists_every_name():
    assert [b.name for b in all_bounds(4, 3)] == list(BOUND_NAMES)


def test_two_state_bounds():
    assert two_state_arbitrary_bound(2) == 5
    assert two_state_arbitrary_bound(3) == Fraction(19, 2)
    assert TWO_STATE_MAXGAIN_BOUND == 7
