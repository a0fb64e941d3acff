"""Exact arithmetic in Z[zeta_n] and signatures of Hermitian matrices over it.

Elements are integer tuples of length phi(n): coefficients of
1, zeta, ..., zeta^(phi-1) after reduction modulo the cyclotomic polynomial.

The signature routine runs a fraction-free (Bareiss) symmetric elimination.
The pivots are the leading principal minors of a congruent matrix; by
Jacobi's rule the signature is read off from their sign changes.  Signs of
real cyclotomic integers are decided by a floating-point evaluation with an
explicit error bound, refined with interval arithmetic when that is too
coarse.
"""

from __future__ import annotations

import math
from contextlib import contextmanager
from functools import lru_cache

import mpmath
import sympy


@contextmanager
def iv_precision(bits: int):
    """Temporarily set the working precision of mpmath's interval context."""
    old = mpmath.iv.prec
    mpmath.iv.prec = bits
    try:
        yield mpmath.iv
    finally:
        mpmath.iv.prec = old


@lru_cache(maxsize=None)
def cyclotomic_coeffs(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, lowest degree first."""
    t = sympy.Symbol("t")
    return tuple(int(c) for c in reversed(sympy.Poly(sympy.cyclotomic_poly(n, t), t).all_coeffs()))


class CyclotomicRing:
    """Z[zeta_n] with elements as reduced coefficient tuples."""

    _cache: dict = {}

    def __new__(cls, n: int):
        ring = cls._cache.get(n)
        if ring is None:
            ring = super().__new__(cls)
            ring._setup(n)
            cls._cache[n] = ring
        return ring

    def _setup(self, n: int):
        if n < 1:
            raise ValueError("n must be positive")
        self.n = n
        self.phi_poly = cyclotomic_coeffs(n)
        self.deg = len(self.phi_poly) - 1
        self.zero = (0,) * self.deg
        self.one = self.from_int(1)
        # zeta^k for 0 <= k < n
        pw = []
        for k in range(n):
            v = [0] * (max(k, self.deg - 1) + 1)
            v[k] = 1
            pw.append(self._reduce(v))
        self.powers = tuple(pw)
        self.units = tuple(k for k in range(1, n) if math.gcd(k, n) == 1) or (1,)
        self._cos = tuple(math.cos(2 * math.pi * j / n) for j in range(self.deg))

    # construction
    def from_int(self, v: int) -> tuple:
        if self.deg == 0:
            return ()
        return (int(v),) + (0,) * (self.deg - 1)

    def zeta(self, k: int = 1) -> tuple:
        return self.powers[k % self.n]

    def _reduce(self, v: list) -> tuple:
        d = self.deg
        p = self.phi_poly
        v = list(v)
        for i in range(len(v) - 1, d - 1, -1):
            c = v[i]
            if c:
                off = i - d
                for j in range(d):
                    v[off + j] -= c * p[j]
                v[i] = 0
        v = v[:d]
        if len(v) < d:
            v += [0] * (d - len(v))
        return tuple(v)

    # arithmetic
    def add(self, x, y):
        return tuple(a + b for a, b in zip(x, y))

    def sub(self, x, y):
        return tuple(a - b for a, b in zip(x, y))

    def neg(self, x):
        return tuple(-a for a in x)

    def scale(self, x, k: int):
        return tuple(a * k for a in x)

    def mul(self, x, y):
        d = self.deg
        if d == 1:
            return (x[0] * y[0],)
        if d == 2:
            # Z[i] and Z[zeta_3]: t^2 = -p1 t - p0
            a0, a1 = x
            b0, b1 = y
            hi = a1 * b1
            p0, p1 = self.phi_poly[0], self.phi_poly[1]
            return (a0 * b0 - p0 * hi, a0 * b1 + a1 * b0 - p1 * hi)
        # fast path when one side is a rational integer
        if not any(y[1:]):
            k = y[0]
            return tuple(a * k for a in x)
        if not any(x[1:]):
            k = x[0]
            return tuple(a * k for a in y)
        out = [0] * (2 * d - 1)
        for i, a in enumerate(x):
            if a:
                for j, b in enumerate(y):
                    if b:
                        out[i + j] += a * b
        return self._reduce(out)

    def is_zero(self, x) -> bool:
        return not any(x)

    def is_rational(self, x) -> bool:
        return not any(x[1:])

    def galois(self, x, k: int):
        """The automorphism zeta -> zeta^k."""
        out = [0] * self.deg
        n = self.n
        for j, a in enumerate(x):
            if a:
                pv = self.powers[(j * k) % n]
                for i, c in enumerate(pv):
                    if c:
                        out[i] += a * c
        return tuple(out)

    def conj(self, x):
        return self.galois(x, -1)

    def real_part_times_2(self, x):
        return self.add(x, self.conj(x))

    def norm_cofactor(self, x) -> tuple[tuple, int]:
        """``(P, D)`` with ``x * P == D`` and ``D`` a nonzero rational integer."""
        prod = self.one
        for k in self.units:
            if k != 1:
                prod = self.mul(prod, self.galois(x, k))
        D = self.mul(x, prod)
        if any(D[1:]) or D[0] == 0:
            raise ArithmeticError("norm computation failed")
        return prod, D[0]

    def divider(self, y):
        """A function computing ``x / y`` for quotients known to lie in Z[zeta_n]."""
        if not any(y[1:]):
            k = y[0]
            if k == 1:
                return lambda x: x
            return lambda x: _int_div(x, k)
        P, D = self.norm_cofactor(y)
        return lambda x: _int_div(self.mul(x, P), D)

    def exact_div(self, x, y):
        """``x / y`` for a quotient known to lie in Z[zeta_n]."""
        if not any(y[1:]):
            k = y[0]
            out = []
            for a in x:
                q, r = divmod(a, k)
                if r:
                    raise ArithmeticError("inexact division")
                out.append(q)
            return tuple(out)
        P, D = self.norm_cofactor(y)
        return self.exact_div(self.mul(x, P), self.from_int(D))

    # evaluation
    def real_value_float(self, x) -> float:
        return math.fsum(a * c for a, c in zip(x, self._cos))

    def real_sign(self, x) -> int:
        """Sign of a real element ``x`` (its imaginary part must vanish)."""
        if not any(x):
            return 0
        if not any(x[1:]):
            return (x[0] > 0) - (x[0] < 0)
        mag = sum(abs(a) for a in x)
        if mag < 2 ** 900:
            v = self.real_value_float(x)
            bound = mag * (len(x) + 2) * 4 * 2.0 ** -52
            if abs(v) > bound:
                return 1 if v > 0 else -1
        return self._real_sign_interval(x)

    def _real_sign_interval(self, x) -> int:
        prec = 80
        bits = max(abs(a) for a in x).bit_length()
        while True:
            with iv_precision(prec + bits):
                tot = mpmath.iv.mpf(0)
                two_pi_over_n = 2 * mpmath.iv.pi / self.n
                for j, a in enumerate(x):
                    if a:
                        tot += a * mpmath.iv.cos(two_pi_over_n * j)
                if tot.a > 0:
                    return 1
                if tot.b < 0:
                    return -1
            prec *= 2
            if prec > 1 << 16:
                raise ArithmeticError("could not resolve sign of a nonzero element")

    def to_complex(self, x) -> complex:
        return sum(a * complex(math.cos(2 * math.pi * j / self.n), math.sin(2 * math.pi * j / self.n))
                   for j, a in enumerate(x))


def _int_div(x, k: int) -> tuple:
    out = []
    for a in x:
        q, r = divmod(a, k)
        if r:
            raise ArithmeticError("inexact division")
        out.append(q)
    return tuple(out)


def hermitian_signature(ring: CyclotomicRing, H) -> tuple[int, int]:
    """``(signature, nullity)`` of a Hermitian matrix with entries in ``ring``.

    ``H`` is a list of rows of ring elements; it is not modified.
    """
    n = len(H)
    M = [list(r) for r in H]
    is_zero = ring.is_zero
    sig = 0
    rank = 0
    div = ring.divider(ring.one)
    prev_sign = 1
    k = 0
    while k < n:
        # pick a diagonal pivot among the remaining indices
        piv = next((i for i in range(k, n) if not is_zero(M[i][i])), None)
        if piv is None:
            pair = next(((i, j) for i in range(k, n) for j in range(i + 1, n)
                         if not is_zero(M[i][j])), None)
            if pair is None:
                break
            i, j = pair
            c = ring.one if not is_zero(ring.real_part_times_2(M[i][j])) else ring.zeta(1)
            _congruence_add(ring, M, i, j, c, k)
            piv = i
        if piv != k:
            M[k], M[piv] = M[piv], M[k]
            for row in M:
                row[k], row[piv] = row[piv], row[k]
        pk = M[k][k]
        s = ring.real_sign(pk)
        sig += s * prev_sign
        prev_sign = s
        rank += 1
        rowk = M[k]
        for i in range(k + 1, n):
            ri = M[i]
            mik = ri[k]
            mik_zero = is_zero(mik)
            for j in range(k + 1, n):
                if j < i:
                    continue
                v = ring.mul(pk, ri[j])
                if not mik_zero:
                    rkj = rowk[j]
                    if not is_zero(rkj):
                        v = ring.sub(v, ring.mul(mik, rkj))
                v = div(v)
                ri[j] = v
                if j != i:
                    M[j][i] = ring.conj(v)
            ri[k] = ring.zero
        div = ring.divider(pk)
        k += 1
    return sig, n - rank


def _congruence_add(ring: CyclotomicRing, M, i: int, j: int, c, start: int):
    """Column i += c * column j, then row i += conj(c) * row j (indices >= start)."""
    n = len(M)
    for r in range(start, n):
        M[r][i] = ring.add(M[r][i], ring.mul(c, M[r][j]))
    cc = ring.conj(c)
    for col in range(start, n):
        M[i][col] = ring.add(M[i][col], ring.mul(cc, M[j][col]))
