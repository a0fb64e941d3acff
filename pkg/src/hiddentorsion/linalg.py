"""Small exact linear algebra over Z and Q."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence


def int_det(rows: Sequence[Sequence[int]]) -> int:
    """Determinant of an integer matrix (Bareiss, fraction-free)."""
    n = len(rows)
    if n == 0:
        return 1
    m = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        mkk = m[k][k]
        rk = m[k]
        for i in range(k + 1, n):
            ri = m[i]
            mik = ri[k]
            for j in range(k + 1, n):
                ri[j] = (mkk * ri[j] - mik * rk[j]) // prev
        prev = mkk
    return sign * m[n - 1][n - 1]


def rational_det(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    n = len(rows)
    if n == 0:
        return Fraction(1)
    den = 1
    for r in rows:
        for v in r:
            den = den * Fraction(v).denominator // math.gcd(den, Fraction(v).denominator)
    scaled = [[int(Fraction(v) * den) for v in r] for r in rows]
    return Fraction(int_det(scaled), den**n)


def rational_solve(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> list[Fraction]:
    """Solve ``M x = rhs`` for square nonsingular ``M`` over Q."""
    n = len(rows)
    aug = [[Fraction(v) for v in r] + [Fraction(b)] for r, b in zip(rows, rhs)]
    for k in range(n):
        piv = next((i for i in range(k, n) if aug[i][k] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        aug[k], aug[piv] = aug[piv], aug[k]
        inv = 1 / aug[k][k]
        rk = [v * inv for v in aug[k]]
        aug[k] = rk
        for i in range(n):
            if i != k and aug[i][k] != 0:
                f = aug[i][k]
                aug[i] = [a - f * b for a, b in zip(aug[i], rk)]
    return [aug[i][n] for i in range(n)]


def mat_vec(rows: Sequence[Sequence[Fraction]], vec: Sequence[Fraction]) -> list[Fraction]:
    return [sum((Fraction(a) * b for a, b in zip(r, vec)), Fraction(0)) for r in rows]


def integer_row_kernel(row: Sequence[int]) -> list[list[int]]:
    """A Z-basis of ``{c in Z^n : sum(row[i] * c[i]) == 0}``.

    Column reduction by unimodular operations: after reducing ``row`` to
    ``(g, 0, ..., 0)`` the transformed unit vectors 2..n span the kernel.
    """
    n = len(row)
    r = list(row)
    basis = [[int(i == j) for j in range(n)] for i in range(n)]  # columns of U
    nz = [i for i in range(n) if r[i] != 0]
    if not nz:
        return basis
    lead = nz[0]
    for i in nz[1:]:
        # gcd step on (r[lead], r[i]) with the matching column operations
        while r[i] != 0:
            q = r[lead] // r[i]
            r[lead] -= q * r[i]
            basis[lead] = [a - q * b for a, b in zip(basis[lead], basis[i])]
            r[lead], r[i] = r[i], r[lead]
            basis[lead], basis[i] = basis[i], basis[lead]
    return [basis[i] for i in range(n) if i != lead]


def poly_interpolate(xs: Sequence[int], ys: Sequence[int]) -> list[Fraction]:
    """Coefficients (low degree first) of the interpolating polynomial (Newton form)."""
    n = len(xs)
    coef = [Fraction(y) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    out = [Fraction(0)] * n
    # expand Newton basis from the highest term down
    for i in range(n - 1, -1, -1):
        # out = out * (x - xs[i]) + coef[i]
        shifted = [Fraction(0)] + out[:-1]
        out = [s - xs[i] * o for s, o in zip(shifted, out)]
        out[0] += coef[i]
    return out
