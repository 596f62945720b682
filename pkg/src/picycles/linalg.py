"""Fraction-free (Bareiss) elimination for small exact rational systems."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence


class SingularMatrix(ArithmeticError):
    pass


def _integer_rows(a, b):
    # scale each augmented row by the lcm of its denominators
    rows = []
    for row, rhs in zip(a, b):
        entries = [Fraction(x) for x in row] + [Fraction(rhs)]
        scale = 1
        for x in entries:
            scale = scale * x.denominator // math.gcd(scale, x.denominator)
        rows.append([int(x * scale) for x in entries])
    return rows


def solve(a: Sequence[Sequence], b: Sequence) -> list[Fraction]:
    """Solve ``a x = b`` exactly. Entries may be ints or Fractions."""
    n = len(a)
    if any(len(row) != n for row in a) or len(b) != n:
        raise ValueError("need a square system")
    m = _integer_rows(a, b)
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    break
            else:
                raise SingularMatrix("matrix is singular")
        pivot = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i, row_k = m[i], m[k]
            for j in range(k + 1, n + 1):
                # exact division is guaranteed by Sylvester's identity
                row_i[j] = (row_i[j] * pivot - mik * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    if n and m[n - 1][n - 1] == 0:
        raise SingularMatrix("matrix is singular")
    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        acc = Fraction(m[i][n])
        for j in range(i + 1, n):
            acc -= m[i][j] * x[j]
        x[i] = acc / m[i][i]
    return x
