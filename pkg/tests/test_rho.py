from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hiddentorsion import knots as kn
from hiddentorsion import rho

T3, T7 = kn.torus_knot(3), kn.torus_knot(7)
KSTAR = kn.knot_star()
U = kn.UNKNOT
F = Fraction


def test_delta_examples():
    assert rho.delta_rho(T3, 3) == F(-4, 3)
    assert rho.delta_rho(U, 3) == 0
    assert rho.delta_rho(KSTAR, 3) == F(-16, 3)


def test_delta_requires_odd_prime():
    for p in (2, 9, 1):
        with pytest.raises(ValueError):
            rho.delta_rho(T3, p)


def test_table_examples():
    t = rho.family_table(KSTAR, 3, 3, verify_upto=2)
    assert [r["value"] for r in t["rows"]] == [0, F(-16, 3), F(-32, 3), F(-16)]
    assert t["pairwise_distinct"]
    assert all(r["direct_ok"] for r in t["rows"] if "direct" in r)
    t = rho.family_table(U, 3, 5)
    assert all(r["value"] == 0 for r in t["rows"]) and not t["pairwise_distinct"]
    t = rho.family_table(T3, 3, 2)
    assert [r["value"] for r in t["rows"]] == [0, F(-4, 3), F(-8, 3)] and t["pairwise_distinct"]


def test_render_table_ends_with_verdict():
    text = rho.render_table(rho.family_table(KSTAR, 3, 3))
    assert text.splitlines()[-1] == "pairwise distinct: true"
    assert "-16/3" in text


def test_report_examples():
    r = rho.obstruction_report(KSTAR, U, 3)
    assert r == {"verdict": "obstructed", "values": (F(-16, 3), 0)}
    assert rho.obstruction_report(T3, T3, 3)["verdict"] == "inconclusive"
    r = rho.obstruction_report(kn.connected_sum(T3, kn.mirror(T3)), U, 3)
    assert r == {"verdict": "inconclusive", "values": (0, 0)}


def test_star_certificate_examples():
    c = rho.star_certificate(KSTAR, 3)
    assert (c["sum_nonzero"], c["integral_zero"], c["star"]) == (True, True, True)
    c = rho.star_certificate(T3, 3)
    assert (c["sum_nonzero"], c["integral_zero"], c["star"]) == (True, False, False)
    c = rho.star_certificate(U, 3)
    assert (c["sum_nonzero"], c["integral_zero"], c["star"]) == (False, True, False)


def test_table_pair_counts():
    counts = rho.table_pair_reports(rho.family_table(KSTAR, 3, 20))
    assert counts == {"obstructed": 210, "inconclusive": 0}


def test_value_json():
    j = rho.obstruction_value(KSTAR, 3).to_json()
    assert j["delta_rho"] == "-16/3" and j["rho"] == "rho0 - 16/3" and j["decimal"] == "-5.333333"


LIB = kn.library()
names = st.sampled_from(sorted(LIB))
primes = st.sampled_from([3, 5, 7, 11])


@given(names, names, primes)
def test_delta_additive_and_mirror(n1, n2, p):
    A, B = LIB[n1], LIB[n2]
    assert rho.delta_rho(kn.connected_sum(A, B), p) == rho.delta_rho(A, p) + rho.delta_rho(B, p)
    assert rho.delta_rho(kn.mirror(A), p) == -rho.delta_rho(A, p)


@given(names, names, primes)
def test_report_symmetric(n1, n2, p):
    r1 = rho.obstruction_report(LIB[n1], LIB[n2], p)
    r2 = rho.obstruction_report(LIB[n2], LIB[n1], p)
    assert r1["verdict"] == r2["verdict"] in ("obstructed", "inconclusive")
    assert r1["values"] == r2["values"][::-1]


@given(names, primes, st.integers(1, 12))
def test_table_linearity_and_verdict(name, p, n):
    A = LIB[name]
    t = rho.family_table(A, p, n)
    d = rho.delta_rho(A, p)
    assert [r["value"] for r in t["rows"]] == [i * d for i in range(n + 1)]
    assert t["pairwise_distinct"] == (d != 0)


@given(st.integers(-6, 6), st.integers(-6, 6))
def test_star_means_integral_zero_but_delta_nonzero(a, b):
    K = kn.combination_knot([T3, T7], (a, b))
    c = rho.star_certificate(K, 3)
    if c["star"]:
        assert kn.circle_integral(K) == 0 and rho.delta_rho(K, 3) != 0
