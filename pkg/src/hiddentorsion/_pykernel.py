"""Pure-Python group-law kernels on packed tower elements.

A packed element is the 7-tuple ``(dn, dd, c, an, ad, bn, bd)`` for
``z^(dn/dd) t^c x^(an/ad) y^(bn/bd)`` with ``0 <= dn < dd``, all
denominators odd and positive and every fraction reduced.  The compiled
kernel in ``_ckernel.pyx`` implements the same functions.
"""

from math import gcd

IDENTITY = (0, 1, 0, 0, 1, 0, 1)


def tower_mul(g, h):
    dn, dd, c, an, ad, bn, bd = g
    dn2, dd2, c2, an2, ad2, bn2, bd2 = h
    if c2 & 1:
        an = -an
        bn = -bn
    # x-part: eps*a + a'
    num = an * ad2 + an2 * ad
    den = ad * ad2
    k = gcd(num, den)
    an3, ad3 = num // k, den // k
    num = bn * bd2 + bn2 * bd
    den = bd * bd2
    k = gcd(num, den)
    bn3, bd3 = num // k, den // k
    # z-part: d + d' - eps*b*a'  (mod 1)
    q = bd * ad2
    den = dd * dd2 * q
    num = (dn * dd2 + dn2 * dd) * q - bn * an2 * dd * dd2
    num %= den
    k = gcd(num, den)
    return (num // k, den // k, c + c2, an3, ad3, bn3, bd3)


def tower_inv(g):
    dn, dd, c, an, ad, bn, bd = g
    # (d, c, a, b)^-1 = (-d - ab, -c, -eps a, -eps b), eps = (-1)^c
    den = dd * ad * bd
    num = (-dn * ad * bd - an * bn * dd) % den
    k = gcd(num, den)
    if c & 1:
        return (num // k, den // k, -c, an, ad, bn, bd)
    return (num // k, den // k, -c, -an, ad, -bn, bd)


def tower_pow(g, n):
    if n < 0:
        g = tower_inv(g)
        n = -n
    result = IDENTITY
    while n:
        if n & 1:
            result = tower_mul(result, g)
        n >>= 1
        if n:
            g = tower_mul(g, g)
    return result


def tower_commutator(g, h):
    return tower_mul(tower_mul(g, h), tower_mul(tower_inv(g), tower_inv(h)))


def mul_many(gs, hs):
    return [tower_mul(g, h) for g, h in zip(gs, hs)]


def associativity_failures(gs, hs, ks):
    """Count triples with ``(gh)k != g(hk)``."""
    bad = 0
    for g, h, k in zip(gs, hs, ks):
        if tower_mul(tower_mul(g, h), k) != tower_mul(g, tower_mul(h, k)):
            bad += 1
    return bad
