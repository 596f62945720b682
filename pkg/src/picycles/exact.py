"""Exact real numbers of the two shapes the bounds need.

``QuadSurd``  a + b*sqrt(D) with rational a, b and a fixed square-free-ish D.
``RootPower`` c * base**(p/q) with rational c >= 0, base > 0.

Both compare exactly against rationals (and ints); ``to_mpf`` gives decimals.
"""

from __future__ import annotations

from fractions import Fraction

import mpmath

Rational = int | Fraction


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _as_fraction(x) -> Fraction:
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


class _ExactReal:
    def sign_minus(self, r: Rational) -> int:  # sign of (self - r)
        raise NotImplementedError

    def to_mpf(self, dps: int = 50):
        raise NotImplementedError

    def __float__(self):
        return float(self.to_mpf(30))

    def _cmp(self, other) -> int:
        if isinstance(other, _ExactReal):
            return other._cmp_rev(self)
        return self.sign_minus(_as_fraction(other))

    def _cmp_rev(self, other) -> int:
        raise TypeError("cannot compare these exact reals")

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __eq__(self, other):
        try:
            return self._cmp(other) == 0
        except TypeError:
            return NotImplemented

    __hash__ = object.__hash__

    def floor(self) -> int:
        # round at working precision, then confirm exactly; widen until it brackets
        dps = 60
        while True:
            with mpmath.workdps(dps):
                guess = int(mpmath.floor(self.to_mpf(dps)))
            if self.sign_minus(guess) >= 0 and self.sign_minus(guess + 1) < 0:
                return guess
            dps *= 2

    def ceil(self) -> int:
        f = self.floor()
        return f if self.sign_minus(f) == 0 else f + 1


class QuadSurd(_ExactReal):
    def __init__(self, a: Rational, b: Rational, d: int):
        if d < 0:
            raise ValueError("negative radicand")
        self.a, self.b, self.d = Fraction(a), Fraction(b), d

    def __repr__(self):
        return f"QuadSurd({self.a} + {self.b}*sqrt({self.d}))"

    def _coerce(self, other) -> QuadSurd:
        if isinstance(other, QuadSurd):
            if other.d != self.d:
                raise ValueError("mismatched radicands")
            return other
        return QuadSurd(_as_fraction(other), 0, self.d)

    def __add__(self, other):
        o = self._coerce(other)
        return QuadSurd(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadSurd(-self.a, -self.b, self.d)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return QuadSurd(self.a * o.a + self.b * o.b * self.d, self.a * o.b + self.b * o.a, self.d)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        out, base = QuadSurd(1, 0, self.d), self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def sign(self) -> int:
        if self.b == 0 or self.d == 0:
            return _sign(self.a)
        sa, sb = _sign(self.a), _sign(self.b)
        if sa == 0 or sa == sb:
            return sb if sa == 0 else sa
        # opposite signs: compare a^2 with b^2 d
        return sa * _sign(self.a * self.a - self.b * self.b * self.d)

    def sign_minus(self, r: Rational) -> int:
        return (self - r).sign()

    def _cmp(self, other) -> int:
        if isinstance(other, QuadSurd):
            return (self - other).sign()
        return super()._cmp(other)

    def to_mpf(self, dps: int = 50):
        with mpmath.workdps(dps + 10):
            v = mpmath.mpf(self.a.numerator) / self.a.denominator + \
                mpmath.mpf(self.b.numerator) / self.b.denominator * mpmath.sqrt(self.d)
        return v


class RootPower(_ExactReal):
    def __init__(self, coef: Rational, base: Rational, p: int, q: int):
        coef, base = Fraction(coef), Fraction(base)
        if coef < 0 or base <= 0 or q <= 0:
            raise ValueError("need coef >= 0, base > 0, q > 0")
        self.coef, self.base, self.p, self.q = coef, base, p, q

    def __repr__(self):
        return f"RootPower({self.coef} * {self.base}^({self.p}/{self.q}))"

    def sign_minus(self, r: Rational) -> int:
        r = Fraction(r)
        if r < 0:
            return 1
        if self.coef == 0:
            return -_sign(r)
        # compare coef^q base^p with r^q (both sides nonnegative)
        lhs = self.coef ** self.q * self.base ** self.p
        return _sign(lhs - r ** self.q)

    def to_mpf(self, dps: int = 50):
        with mpmath.workdps(dps + 10):
            c = mpmath.mpf(self.coef.numerator) / self.coef.denominator
            b = mpmath.mpf(self.base.numerator) / self.base.denominator
            v = c * mpmath.power(b, mpmath.mpf(self.p) / self.q)
        return v


class Numeric(_ExactReal):
    """A value only known as a high-precision float; comparisons refuse near-ties."""

    def __init__(self, fn, guard: float = 1e-30):
        self.fn, self.guard = fn, guard

    def to_mpf(self, dps: int = 50):
        with mpmath.workdps(dps + 10):
            v = self.fn()
        return v

    def sign_minus(self, r: Rational) -> int:
        r = Fraction(r)
        with mpmath.workdps(80):
            diff = self.fn() - mpmath.mpf(r.numerator) / r.denominator
            if abs(diff) < self.guard:
                raise ArithmeticError("comparison too close to decide numerically")
            return 1 if diff > 0 else -1


class Shifted(_ExactReal):
    """``inner + offset`` for an exact real ``inner`` and rational ``offset``."""

    def __init__(self, inner: _ExactReal, offset: Rational):
        self.inner, self.offset = inner, Fraction(offset)

    def __repr__(self):
        return f"Shifted({self.inner!r} + {self.offset})"

    def sign_minus(self, r: Rational) -> int:
        return self.inner.sign_minus(Fraction(r) - self.offset)

    def to_mpf(self, dps: int = 50):
        with mpmath.workdps(dps + 10):
            v = self.inner.to_mpf(dps) + mpmath.mpf(self.offset.numerator) / self.offset.denominator
        return v
