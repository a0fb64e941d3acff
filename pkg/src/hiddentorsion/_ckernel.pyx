# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of ``_pykernel``.

Works in 64-bit integers with overflow detection; any input or
intermediate that does not fit is handed to the pure-Python kernel, so
results are always exact.
"""

from hiddentorsion import _pykernel

cdef extern from *:
    """
    static inline int ht_mul(long long a, long long b, long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    static inline int ht_add(long long a, long long b, long long *r) {
        return __builtin_add_overflow(a, b, r);
    }
    static inline int ht_sub(long long a, long long b, long long *r) {
        return __builtin_sub_overflow(a, b, r);
    }
    """
    int ht_mul(long long a, long long b, long long *r) nogil
    int ht_add(long long a, long long b, long long *r) nogil
    int ht_sub(long long a, long long b, long long *r) nogil

IDENTITY = _pykernel.IDENTITY

cdef inline long long _gcd(long long a, long long b) nogil:
    cdef long long t
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        t = a % b
        a = b
        b = t
    return a

cdef inline long long _mod(long long a, long long m) nogil:
    cdef long long r = a % m
    if r < 0:
        r += m
    return r

cdef struct htelem:
    long long dn, dd, c, an, ad, bn, bd

cdef inline int _unpack(object g, htelem *p) except -1:
    try:
        p.dn = g[0]; p.dd = g[1]; p.c = g[2]
        p.an = g[3]; p.ad = g[4]; p.bn = g[5]; p.bd = g[6]
    except OverflowError:
        return 1
    return 0

cdef inline tuple _pack(htelem *p):
    return (p.dn, p.dd, p.c, p.an, p.ad, p.bn, p.bd)

cdef int _mul(htelem *g, htelem *h, htelem *out) nogil:
    """Return 1 on overflow."""
    cdef long long an = g.an, bn = g.bn
    cdef long long t1, t2, num, den, q, k, dd12
    if h.c & 1:
        if ht_sub(0, an, &an) or ht_sub(0, bn, &bn):
            return 1
    # x-part
    if ht_mul(an, h.ad, &t1) or ht_mul(h.an, g.ad, &t2) or ht_add(t1, t2, &num):
        return 1
    if ht_mul(g.ad, h.ad, &den):
        return 1
    k = _gcd(num, den)
    out.an = num // k
    out.ad = den // k
    # y-part
    if ht_mul(bn, h.bd, &t1) or ht_mul(h.bn, g.bd, &t2) or ht_add(t1, t2, &num):
        return 1
    if ht_mul(g.bd, h.bd, &den):
        return 1
    k = _gcd(num, den)
    out.bn = num // k
    out.bd = den // k
    # z-part: d + d' - eps*b*a' mod 1
    if ht_mul(g.bd, h.ad, &q) or ht_mul(g.dd, h.dd, &dd12) or ht_mul(dd12, q, &den):
        return 1
    if ht_mul(g.dn, h.dd, &t1) or ht_mul(h.dn, g.dd, &t2) or ht_add(t1, t2, &num):
        return 1
    if ht_mul(num, q, &num):
        return 1
    if ht_mul(bn, h.an, &t1) or ht_mul(t1, dd12, &t1):
        return 1
    if ht_sub(num, t1, &num):
        return 1
    num = _mod(num, den)
    k = _gcd(num, den)
    out.dn = num // k
    out.dd = den // k
    if ht_add(g.c, h.c, &out.c):
        return 1
    return 0


cpdef tuple tower_mul(tuple g, tuple h):
    cdef htelem pg, ph, po
    if _unpack(g, &pg) or _unpack(h, &ph) or _mul(&pg, &ph, &po):
        return _pykernel.tower_mul(g, h)
    return _pack(&po)


cpdef tuple tower_inv(tuple g):
    cdef htelem p
    cdef long long den, t1, t2, num, k
    if _unpack(g, &p):
        return _pykernel.tower_inv(g)
    if (ht_mul(p.dd, p.ad, &den) or ht_mul(den, p.bd, &den)
            or ht_mul(p.dn, p.ad, &t1) or ht_mul(t1, p.bd, &t1)
            or ht_mul(p.an, p.bn, &t2) or ht_mul(t2, p.dd, &t2)
            or ht_add(t1, t2, &num) or ht_sub(0, num, &num)):
        return _pykernel.tower_inv(g)
    num = _mod(num, den)
    k = _gcd(num, den)
    if p.c & 1:
        return (num // k, den // k, -p.c, p.an, p.ad, p.bn, p.bd)
    return (num // k, den // k, -p.c, -p.an, p.ad, -p.bn, p.bd)


cpdef tuple tower_pow(tuple g, object n):
    if n < 0:
        g = tower_inv(g)
        n = -n
    cdef tuple result = IDENTITY
    while n:
        if n & 1:
            result = tower_mul(result, g)
        n >>= 1
        if n:
            g = tower_mul(g, g)
    return result


cpdef tuple tower_commutator(tuple g, tuple h):
    return tower_mul(tower_mul(g, h), tower_mul(tower_inv(g), tower_inv(h)))


def mul_many(list gs, list hs):
    return [tower_mul(g, h) for g, h in zip(gs, hs)]


def associativity_failures(list gs, list hs, list ks):
    cdef Py_ssize_t i, n = len(gs), bad = 0
    cdef htelem pg, ph, pk, gh, hk, l, r
    for i in range(n):
        if (_unpack(gs[i], &pg) or _unpack(hs[i], &ph) or _unpack(ks[i], &pk)
                or _mul(&pg, &ph, &gh) or _mul(&gh, &pk, &l)
                or _mul(&ph, &pk, &hk) or _mul(&pg, &hk, &r)):
            g, h, k = gs[i], hs[i], ks[i]
            if _pykernel.tower_mul(_pykernel.tower_mul(g, h), k) != _pykernel.tower_mul(g, _pykernel.tower_mul(h, k)):
                bad += 1
            continue
        if (l.dn != r.dn or l.dd != r.dd or l.c != r.c or l.an != r.an
                or l.ad != r.ad or l.bn != r.bn or l.bd != r.bd):
            bad += 1
    return bad
