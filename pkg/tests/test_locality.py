import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hiddentorsion import locality as lo
from hiddentorsion.exact import QQ, ZZ, ZZ_2, invert_primes, ring_contains
from hiddentorsion.linalg import mat_vec, rational_det

F = Fraction


def M(rows, ring=ZZ):
    return lo.LaurentMatrix(tuple(tuple(r) for r in rows), ring)


def test_parse_laurent():
    assert lo.parse_laurent("2t-1").coeffs == {1: 2, 0: -1}
    assert lo.parse_laurent("t^-1 + 3/5").coeffs == {-1: 1, 0: F(3, 5)}
    assert lo.parse_laurent("-t^2").coeffs == {2: -1}
    assert lo.parse_laurent("t - t").coeffs == {}
    for bad in ("", "2x", "t^"):
        with pytest.raises(ValueError):
            lo.parse_laurent(bad)


def test_eval_examples():
    assert lo.eval_matrix(M([["t"]]), 1) == [[1]]
    assert lo.eval_matrix(M([["t"]]), -1) == [[-1]]
    assert lo.eval_matrix(M([["2t-1"]]), -1) == [[-3]]
    with pytest.raises(ValueError):
        lo.eval_matrix(M([["t"]]), 2)


def _flags(r):
    return (r["unit_at_1"], r["unit_at_minus1_in_Z2"], r["parity_ok"])


def test_criterion_examples():
    assert _flags(lo.locality_criterion(M([["t"]]), ZZ)) == (True, True, True)
    assert _flags(lo.locality_criterion(M([["2t-1"]]), ZZ)) == (True, True, True)
    assert _flags(lo.locality_criterion(M([["2"]]), ZZ)) == (False, False, True)


@pytest.mark.parametrize("R", [QQ, invert_primes(2)])
def test_criterion_rejects_rings_inverting_two(R):
    with pytest.raises(ValueError):
        lo.locality_criterion(M([["t"]]), R)


def test_solve_examples():
    assert lo.solve_local(M([["t"]]), [5]) == [-5]
    assert lo.solve_local(M([["2t-1"]]), [1]) == [F(-1, 3)]
    ident = M([["1", "0"], ["0", "1"]])
    assert lo.solve_local(ident, [F(3, 7), -2]) == [F(3, 7), -2]
    with pytest.raises(ValueError):
        lo.solve_local(M([["2"]]), [1])


def test_trivial_action_examples():
    assert lo.trivial_action_locality([[1, 0], [0, 1]], [4, F(1, 3)], ZZ_2)["solution"] == [4, F(1, 3)]
    assert lo.trivial_action_locality([[3]], [1], ZZ_2)["solution"] == [F(1, 3)]
    with pytest.raises(ValueError, match="not a unit"):
        lo.trivial_action_locality([[2]], [1], ZZ_2)


def test_ring_constraint_on_coefficients():
    with pytest.raises(ValueError):
        M([["1/3 t"]], ZZ)
    assert M([["1/3t"]], ZZ_2).size == 1


def test_json_roundtrip():
    A = M([["2t-1", "t^-2 + 3"], ["0", "-t"]], ZZ_2)
    assert lo.LaurentMatrix.from_json(A.to_json()) == A
    assert A.to_json()["rows"][0][0] == {"0": "-1", "1": "2"}


# ---------------------------------------------------------------- properties

@given(st.integers(0, 10 ** 6))
def test_lemma_on_conditioned_samples(seed):
    for A in lo.sample_conditioned(random.Random(seed), 3):
        r = lo.locality_criterion(A, ZZ)
        assert r["unit_at_1"] in (True, False)
        if lo._unit(r["det_at_1"], ZZ_2):
            assert r["unit_at_minus1_in_Z2"]


@given(st.integers(0, 10 ** 6))
def test_parity_identity(seed):
    A = lo.random_laurent_matrix(random.Random(seed))
    d1 = rational_det(lo.eval_matrix(A, 1))
    dm = rational_det(lo.eval_matrix(A, -1))
    assert (d1 - dm) % 2 == 0
    assert lo.locality_criterion(A, ZZ)["parity_ok"]


@given(st.integers(0, 10 ** 6), st.lists(st.fractions(max_denominator=99).filter(lambda q: q.denominator % 2),
                                          min_size=4, max_size=4))
def test_solve_roundtrip_and_uniqueness(seed, f):
    A = lo.sample_conditioned(random.Random(seed), 1, allowed=(1, -1, 3, -3))[0]
    f = f[:A.size]
    g = lo.solve_local(A, f, ZZ_2)
    Am = lo.eval_matrix(A, -1)
    assert mat_vec(Am, g) == f
    assert all(ring_contains(v, ZZ_2) for v in g)
    g2 = list(g)
    g2[0] += 1
    assert mat_vec(Am, g2) != f
