import json
import random

import pytest
from hypothesis import given, strategies as st

from hiddentorsion import equations as eq
from hiddentorsion.exact import QQ, ZZ, ZZ_2

GH = eq.GroupPresentation.parse(["g", "h"], [])
G = eq.GroupPresentation.parse(["g"], [])


def test_validate_examples():
    S = eq.EquationSystem.parse(GH, 3, ["g x1 x2 x1^-1 x2^-1", "x2 x1 X2 X1 h"])
    assert eq.validate_system(S, ZZ_2) == (True, [])
    ok, diag = eq.validate_system(eq.EquationSystem.parse(eq.TRIVIAL_GROUP, 1, ["x1"]), ZZ_2)
    assert not ok and "exponent sum of x1" in diag[0]
    ok, diag = eq.validate_system(eq.EquationSystem.parse(G, 2, ["g"]), ZZ_2)
    assert not ok and "not a unit" in diag[0]


def test_adjoin_examples():
    S = eq.EquationSystem.parse(G, 3, ["g[x1,g]"])
    P = eq.adjoin(S)
    assert P.generators == ("g", "z1")
    assert str(P) == "<g, z1 | z1^-3 g z1 g z1^-1 g^-1>"
    empty = eq.EquationSystem(G, 0, 3, (), ())
    assert eq.adjoin(empty) == G


def test_chained_adjunction():
    S1 = eq.EquationSystem.parse(G, 3, ["[g,x1]"])
    P1 = eq.adjoin(S1)
    S2 = eq.EquationSystem.parse(P1, 5, ["z1 x1 Z1 X1"])
    P2 = eq.adjoin(S2)
    assert P2.generators == ("g", "z1", "z2")
    assert len(P2.relators) == 2


def test_boundary_examples():
    S = eq.EquationSystem.parse(GH, 3, ["g x1 x2 x1^-1 x2^-1", "x2 x1 X2 X1 h"])
    assert eq.boundary_matrix(S) == [[-3, 0], [0, -3]]
    assert eq.boundary_matrix(eq.EquationSystem(G, 0, 3, (), ())) == []
    bad = eq.EquationSystem.parse(eq.TRIVIAL_GROUP, 3, ["x2x1x2", "[x1,x2]"])
    assert eq.boundary_matrix(bad)[0] == [-2, 2]
    assert eq.boundary_deviations(bad) == [0]


def test_certificate_examples():
    S = eq.EquationSystem.parse(GH, 3, ["[g,x1]", "[x2,h]"])
    assert eq.homology_certificate(S, ZZ_2) == {"h_relative_trivial": True, "det": 9}
    assert eq.homology_certificate(S, ZZ) == {"h_relative_trivial": False, "det": 9}
    one = eq.EquationSystem.parse(G, 1, ["g"])
    for R in (ZZ, ZZ_2, QQ):
        assert eq.homology_certificate(one, R) == {"h_relative_trivial": True, "det": -1}


def test_snf_examples():
    assert eq.abelianization_snf(eq.tower_presentation(3)) == {"invariant_factors": [2, 2], "free_rank": 1}
    assert eq.abelianization_snf(eq.free_group(2)) == {"invariant_factors": [], "free_rank": 2}
    assert eq.abelianization_snf(eq.GroupPresentation.parse(["a"], ["a^3"])) == \
        {"invariant_factors": [3], "free_rank": 0}


@pytest.mark.parametrize("k", range(1, 6))
def test_tower_h1(k):
    assert eq.abelianization_snf(eq.tower_presentation(2 * k - 1)) == {"invariant_factors": [2, 2], "free_rank": 1}


@pytest.mark.parametrize("text,expected", [
    ("a b A", (("a", 1), ("b", 1), ("a", -1))),
    ("a^3 a^-1", (("a", 2),)),
    ("(ab)^-1", (("b", -1), ("a", -1))),
    ("[a,b]", (("a", 1), ("b", 1), ("a", -1), ("b", -1))),
    ("a⁻¹", (("a", -1),)),
    ("1", ()),
    ("a a^-1", ()),
])
def test_parse_word(text, expected):
    assert eq.parse_word(text, ["a", "b"]) == expected


@pytest.mark.parametrize("bad", ["c", "(a", "[a b]", "[a,b"])
def test_parse_word_errors(bad):
    with pytest.raises(ValueError):
        eq.parse_word(bad, ["a", "b"])


def test_system_errors():
    with pytest.raises(ValueError):
        eq.EquationSystem.parse(G, 0, ["g"])
    with pytest.raises(ValueError):
        eq.EquationSystem.parse(G, 3, ["g"], variables=["g"])


def test_json_roundtrip_and_file(tmp_path):
    S = eq.EquationSystem.parse(GH, 3, ["g x1 X1", "[x2,h]"])
    assert eq.EquationSystem.from_json(S.to_json()) == S
    path = tmp_path / "systems.json"
    path.write_text(json.dumps({"systems": [S.to_json(), S.to_json()]}))
    assert eq.load_systems(str(path)) == [S, S]
    cert = eq.certificate_json(S, ZZ_2)
    assert cert["valid"] and cert["det"] == 9 and cert["boundary_is_minus_e_identity"]


# ---------------------------------------------------------------- properties

odd_e = st.integers(-9, 9).filter(lambda e: e % 2)


@given(st.integers(0, 10 ** 6), st.integers(1, 6), odd_e)
def test_random_systems_have_diagonal_boundary(seed, n, e):
    S = eq.random_system(random.Random(seed), n, GH, e)
    assert eq.validate_system(S, ZZ_2)[0]
    assert eq.boundary_matrix(S) == [[-e if i == j else 0 for j in range(n)] for i in range(n)]
    cert = eq.homology_certificate(S, ZZ_2)
    assert cert["det"] == (-e) ** n and cert["h_relative_trivial"]
    assert eq.homology_certificate(S, ZZ)["h_relative_trivial"] == (abs(e) == 1)


@given(st.integers(0, 10 ** 6), st.integers(1, 4), st.sampled_from([1, -1]))
def test_adjoin_preserves_h1_for_unit_e(seed, n, e):
    base = eq.tower_presentation(3)
    S = eq.random_system(random.Random(seed), n, base, e, max_len=20)
    assert eq.abelianization_snf(eq.adjoin(S)) == eq.abelianization_snf(base)


@given(st.integers(0, 10 ** 6), st.integers(1, 3), odd_e)
def test_adjoin_preserves_h1_over_q(seed, n, e):
    base = GH
    S = eq.random_system(random.Random(seed), n, base, e, max_len=20)
    assert eq.h1_tensor(eq.adjoin(S), QQ)["free_rank"] == eq.h1_tensor(base, QQ)["free_rank"]
    assert eq.h1_tensor(eq.adjoin(S), QQ)["invariant_factors"] == []


@given(st.integers(0, 10 ** 6), st.integers(1, 4), odd_e, st.integers(0, 10))
def test_validation_invariant_under_relabel_and_cancelling_pairs(seed, n, e, pos):
    rng = random.Random(seed)
    S = eq.random_system(rng, n, GH, e, max_len=15)
    new_vars = tuple(f"v{i}" for i in range(n))
    ren = dict(zip(S.variables, new_vars))
    words = []
    for w in S.words:
        w = [(ren.get(s, s), k) for s, k in w]
        sym = rng.choice(list(new_vars) + ["g", "h"])
        i = min(pos, len(w))
        # a cancelling pair survives construction only until free reduction
        words.append(tuple(w[:i] + [(sym, 1), (sym, -1)] + w[i:]))
    T = eq.EquationSystem(GH, n, e, tuple(words), new_vars)
    assert eq.validate_system(T, ZZ_2)[0] == eq.validate_system(S, ZZ_2)[0]
    assert eq.boundary_matrix(T) == eq.boundary_matrix(S)
