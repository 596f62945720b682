"""Named upper and lower bounds on cycle counts and policy-iteration lengths.

Every bound is held as an exact real (integer, surd or rational root power) so
``admits`` can decide ``count <= bound`` without rounding. Only the star bound
falls back to high-precision floats with a near-tie guard.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .exact import Numeric, QuadSurd, RootPower, Shifted
from .extremal import alpha, ceil_alpha_power

BOUND_NAMES = (
    "MkBound", "FkUpper", "FkLower", "StarBound", "N1Bound", "N2Bound",
    "ArbitraryPiBound", "MaxGainPiBound", "HowardBound",
)

# bounds that are exactly (k+1)! raised to a rational power, times a coefficient
_FACT_POWER = {"MkBound", "N2Bound", "MaxGainPiBound", "HowardBound"}


def _alpha_pow(k: int, e: int) -> QuadSurd:
    if e >= 0:
        return alpha(k) ** e
    # 1/alpha = alpha - (k-1) from the defining quadratic
    return (alpha(k) - (k - 1)) ** (-e)


@dataclass(frozen=True)
class BoundValue:
    name: str
    n: int
    k: int

    def __post_init__(self):
        if self.name not in BOUND_NAMES:
            raise ValueError(f"unknown bound {self.name!r}; expected one of {', '.join(BOUND_NAMES)}")
        if self.n < 0 or self.k < 2:
            raise ValueError(f"need n >= 0 and k >= 2, got n={self.n}, k={self.k}")

    def exact(self):
        n, k = self.n, self.k
        fact = math.factorial(k + 1)
        if self.name == "MkBound":
            return RootPower(1, fact, n, k + 1)
        if self.name == "FkUpper":
            return 5 * _alpha_pow(k, n)
        if self.name == "FkLower":
            return ceil_alpha_power(k, n)
        if self.name == "StarBound":
            return Numeric(lambda: (k - 2 + mpmath.cbrt(6)) ** n)
        if self.name == "N1Bound":
            return 5 * n * n * k * _alpha_pow(k, n - 1)
        if self.name == "ArbitraryPiBound":
            return 5 * n ** 3 * k * k * _alpha_pow(k, n - 1)
        if self.name == "N2Bound":
            return RootPower(n * n * k, fact, n - 1, k + 1)
        if self.name == "MaxGainPiBound":
            return RootPower((n + 1) * n * n * k, fact, n - 1, k + 1)
        # HowardBound
        return Shifted(RootPower(n * n * k, fact, n - 1, k + 1), 1)

    def value(self, dps: int = 30):
        x = self.exact()
        if isinstance(x, int):
            return mpmath.mpf(x)
        return x.to_mpf(dps)

    def is_integer(self) -> bool:
        return isinstance(self.exact(), int)

    def admits(self, count: int | Fraction) -> bool:
        """True iff ``count <= bound``, decided exactly."""
        x = self.exact()
        if isinstance(x, int):
            return count <= x
        return x >= count


def all_bounds(n: int, k: int) -> list[BoundValue]:
    return [BoundValue(name, n, k) for name in BOUND_NAMES]


def two_state_arbitrary_bound(k: int) -> Fraction:
    """Longest improving sequence on 2-state k-action DMDPs, arbitrary action choice."""
    return Fraction(k * k, 2) + 2 * k - 1


TWO_STATE_MAXGAIN_BOUND = 7
