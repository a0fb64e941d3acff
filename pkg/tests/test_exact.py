from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hiddentorsion.exact import (
    QQ, ZZ, ZZ_2, SubringSpec, TorsionCoset, invert_primes, is_unit, localization_at,
    p_primary_part, parse_rational, ring_contains, torsion_op,
)


def F(s):
    return parse_rational(s)


@pytest.mark.parametrize("q,ring,expected", [
    ("3/5", ZZ_2, True),
    ("1/2", ZZ_2, False),
    ("1/9", invert_primes(3), True),
    ("7", ZZ, True),
    ("1/3", ZZ, False),
    ("5/7", QQ, True),
])
def test_ring_contains_examples(q, ring, expected):
    assert ring_contains(F(q), ring) is expected


@pytest.mark.parametrize("q,ring,expected", [
    ("3", ZZ_2, True),
    ("3", ZZ, False),
    ("-3/5", ZZ_2, True),
    ("-1", ZZ, True),
    ("2", ZZ_2, False),
])
def test_is_unit_examples(q, ring, expected):
    assert is_unit(F(q), ring) is expected


def test_is_unit_rejects_zero():
    with pytest.raises(ValueError):
        is_unit(0, ZZ_2)


def test_torsion_examples():
    assert torsion_op(TorsionCoset(F("1/3")), TorsionCoset(F("1/3"))).value == F("2/3")
    assert torsion_op(TorsionCoset(F("2/3")), TorsionCoset(F("1/3"))).value == 0
    assert torsion_op(TorsionCoset(F("1/9")), op="neg").value == F("8/9")
    with pytest.raises(ValueError):
        TorsionCoset(Fraction(1, 2))


@pytest.mark.parametrize("x,p,expected", [("1/15", 3, "2/3"), ("1/7", 3, "0"), ("1/9", 3, "1/9")])
def test_p_primary_examples(x, p, expected):
    assert p_primary_part(TorsionCoset(F(x)), p).value == F(expected)


def test_p_primary_rejects_two():
    with pytest.raises(ValueError):
        p_primary_part(TorsionCoset(F("1/3")), 2)


def _crt_oracle(x: Fraction, p: int) -> Fraction:
    # brute force: the unique a/p^k with x - a/p^k of order prime to p
    m = x.denominator
    pk = 1
    while m % pk == 0 and m % (pk * p) == 0:
        pk *= p
    for a in range(pk):
        rest = TorsionCoset(x - Fraction(a, pk))
        if rest.order % p:
            return Fraction(a, pk)
    raise AssertionError


odd_den = st.integers(0, 300).map(lambda k: 2 * k + 1)
torsion = st.builds(lambda n, d: TorsionCoset(Fraction(n, d)), st.integers(-10 ** 4, 10 ** 4), odd_den)
odd_prime = st.sampled_from([3, 5, 7, 11, 13])


@given(torsion, odd_prime)
def test_p_primary_matches_oracle(x, p):
    assert p_primary_part(x, p).value == _crt_oracle(x.value, p)


@given(torsion, odd_prime)
def test_p_primary_order_is_exact_p_power(x, p):
    part = p_primary_part(x, p)
    pk = 1
    while x.order % (pk * p) == 0:
        pk *= p
    assert part.order == pk


@given(torsion, torsion, odd_prime)
def test_p_primary_additive(x, y, p):
    assert p_primary_part(x + y, p) == p_primary_part(x, p) + p_primary_part(y, p)


def test_p_primary_additive_exhaustive_small():
    xs = [TorsionCoset(Fraction(n, d)) for d in range(1, 46, 2) for n in range(d)]
    for p in (3, 5):
        parts = {x: p_primary_part(x, p) for x in xs}
        for x in xs[::7]:
            for y in xs[::5]:
                assert p_primary_part(x + y, p) == parts[x] + parts[y]


rationals = st.fractions(max_denominator=500).filter(lambda q: q != 0)
rings = st.sampled_from([ZZ, ZZ_2, QQ, localization_at(3), invert_primes(3), invert_primes(2, 5)])


@given(rationals, rationals, rings)
def test_units_closed_under_product(q, r, R):
    if is_unit(q, R) and is_unit(r, R):
        assert is_unit(q * r, R)


@given(rationals, st.sets(st.sampled_from([2, 3, 5, 7]), max_size=3), st.sampled_from([2, 3, 5, 7]))
def test_membership_monotone_in_inverted_primes(q, primes, extra):
    small = SubringSpec(frozenset(primes), False)
    big = SubringSpec(frozenset(primes | {extra}), False)
    if ring_contains(q, small):
        assert ring_contains(q, big)
    if ring_contains(q, ZZ):
        assert ring_contains(q, localization_at(extra))


@pytest.mark.parametrize("text,ring", [("Z", ZZ), ("Q", QQ), ("Z_(2)", ZZ_2), ("Z[1/3]", invert_primes(3)),
                                       ("Z_(5)", localization_at(5))])
def test_subring_parse_and_json(text, ring):
    R = SubringSpec.parse(text)
    assert R.primes == ring.primes and R.complement == ring.complement
    R2 = SubringSpec.from_json(R.to_json())
    assert R2.primes == R.primes and R2.complement == R.complement


@pytest.mark.parametrize("bad", ["", "1/0", "abc", "1.5"])
def test_parse_rational_errors(bad):
    with pytest.raises(ValueError):
        parse_rational(bad)


def test_floats_are_rejected():
    with pytest.raises(TypeError):
        ring_contains(0.5, ZZ)
