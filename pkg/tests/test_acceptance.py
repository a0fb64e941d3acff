"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Every test times itself and fails when it exceeds its bound.
"""

import random
import time
from fractions import Fraction

import pytest

from hiddentorsion import _kernel, equations as eq, knots as kn, locality as lo, rho, series as se
from hiddentorsion import tower as tw
from hiddentorsion.exact import ZZ, ZZ_2
from hiddentorsion.linalg import mat_vec, rational_det
from hiddentorsion.rewriting import exhaustive_check

F = Fraction


@pytest.fixture
def report(capsys):
    def emit(number, title, ok, elapsed, bound, detail=""):
        status = "PASS" if ok and elapsed < bound else "FAIL"
        line = f"{status} criterion {number}: {title} [{elapsed:.2f}s < {bound}s]"
        if detail:
            line += f" {detail}"
        with capsys.disabled():
            print("\n" + line)
        assert ok, detail
        assert elapsed < bound, f"took {elapsed:.2f}s, bound {bound}s"
    return emit


def test_criterion_1_group_law(report):
    t0 = time.perf_counter()
    rng = random.Random(1)
    fails = 0
    for stage in (9, None):
        gs, hs, ks = (tw.random_packed(rng, 10 ** 5, stage=stage) for _ in range(3))
        fails += _kernel.associativity_failures(gs, hs, ks)
    relators_ok = all(tw.normalize(w, m).is_identity()
                      for m in (1, 3, 5, 7, 9) for w in tw.relator_words(m).values())
    ex = exhaustive_check(3, 8)
    elapsed = time.perf_counter() - t0
    ok = fails == 0 and relators_ok and ex["ok"]
    report(1, "group law", ok, elapsed, 10,
           f"(assoc failures {fails}, relators {relators_ok}, {ex['words']} words <= 8 checked, backend {_kernel.BACKEND})")


def test_criterion_2_lcs_length(report):
    t0 = time.perf_counter()
    z3 = tw.gen_z(3)
    zhat = tw.TowerElement(F(1, 3))
    in_all = all(se.series_member(g, se.SeriesIndex.lcs(q)) for g in (z3, zhat) for q in range(1, 65))
    rng = random.Random(2)
    samples = [tw.random_element(rng, stage=3) for _ in range(500)]
    for q in range(1, 7):
        samples += se.lcs_generators(q, 3)
    closure = se.commutator_closure_check(samples, 6, stage=3)
    others = [tw.random_element(rng) for _ in range(1000)]
    central = all(z3 * h == h * z3 and zhat * h == h * zhat for h in others)
    omega1_trivial = all(se.series_member(tw.commutator(z3, h), se.SeriesIndex.omega_plus_1()) for h in others)
    elapsed = time.perf_counter() - t0
    ok = in_all and not closure and central and omega1_trivial
    report(2, "lcs length omega+1", ok, elapsed, 5,
           f"(z in lcs(q<=64): {in_all}, closure violations {len(closure)}, central: {central})")


def test_criterion_3_p3_quotient(report):
    t0 = time.perf_counter()
    g15 = tw.TowerElement(F(1, 15))
    orders = {p: se.quotient_order(se.project_P3(g15, p)) for p in (3, 5, 7)}
    rng = random.Random(3)
    bad = 0
    for p in (2, 3, 5, 7):
        for i in range(10 ** 4):
            if i % 3 == 0:
                g = tw.TowerElement(F(rng.randint(0, 200), rng.choice([3, 5, 7, 9, 15, 21, 45])))
            else:
                g = tw.random_element(rng, max_den=45)
            if se.project_P3(g, p).is_identity() != se.series_member(g, se.SeriesIndex.mixed(3, p)):
                bad += 1
    elapsed = time.perf_counter() - t0
    ok = orders == {3: 3, 5: 5, 7: 1} and bad == 0
    report(3, "P^3 quotient orders and kernel", ok, elapsed, 5, f"(orders {orders}, kernel mismatches {bad})")


def test_criterion_4_signatures(report):
    t0 = time.perf_counter()
    T3, T7, U = kn.torus_knot(3), kn.torus_knot(7), kn.UNKNOT
    golden = [
        (kn.signature_at(T3, F(1, 2)), -2), (kn.root_sum(T3, 3), -4), (kn.circle_integral(T3), F(-4, 3)),
        (kn.root_sum(T7, 3), -8), (kn.circle_integral(T7), F(-24, 7)),
        (kn.root_sum(U, 3), 0), (kn.circle_integral(U), 0), (kn.signature_at(U, F(1, 3)), 0),
    ]
    golden_ok = all(a == b for a, b in golden)

    lib = kn.library()
    names = sorted(lib)
    rng = random.Random(4)
    add_bad = mirror_bad = 0
    for i in range(1000):
        A, B = lib[rng.choice(names)], lib[rng.choice(names)]
        if rng.random() < 0.5:
            B = kn.mirror(B)
        C = kn.connected_sum(A, B)
        p = rng.choice((3, 5, 7))
        s = F(rng.randint(0, 999), 1000)
        if (kn.root_sum(C, p) != kn.root_sum(A, p) + kn.root_sum(B, p)
                or kn.circle_integral(C) != kn.circle_integral(A) + kn.circle_integral(B)
                or kn.signature_at(C, s) != kn.signature_at(A, s) + kn.signature_at(B, s)):
            add_bad += 1
        MA = kn.mirror(A)
        if (kn.root_sum(MA, p) != -kn.root_sum(A, p) or kn.circle_integral(MA) != -kn.circle_integral(A)
                or kn.signature_at(MA, s) != -kn.signature_at(A, s)):
            mirror_bad += 1
        if i < 200:
            # same sum in a scrambled basis, evaluated from scratch
            D = kn.random_congruence(C, rng, steps=8)
            if (kn.circle_integral(D) != kn.circle_integral(C)
                    or kn.root_sum(D, 3, method="exact") != kn.root_sum(A, 3) + kn.root_sum(B, 3)):
                add_bad += 1

    oracle_bad = 0
    checked = 0
    for name in names:
        A = lib[name]
        f = kn.signature_function(A)
        frng = random.Random(name)
        for _ in range(10 ** 4):
            x = frng.random()
            if any(abs(x - float(b)) <= 1e-6 for b in f.breakpoints) or x < 1e-6 or x > 1 - 1e-6:
                continue
            checked += 1
            if f(Fraction(x)) != kn.float_signature(A, x):
                oracle_bad += 1
    elapsed = time.perf_counter() - t0
    ok = golden_ok and add_bad == 0 and mirror_bad == 0 and oracle_bad == 0
    report(4, "signature golden values, additivity, oracle", ok, elapsed, 30,
           f"(golden {golden_ok}, additivity failures {add_bad}, mirror failures {mirror_bad}, "
           f"oracle mismatches {oracle_bad}/{checked})")


def test_criterion_5_knot_family(report):
    t0 = time.perf_counter()
    basis = [kn.torus_knot(3), kn.torus_knot(7)]
    cert = kn.search_star(3, basis)
    cert_ok = cert is not None and kn.verify_star(3, basis, cert.coefficients)["ok"]
    known = kn.verify_star(3, basis, (18, -7))
    known_ok = known["ok"] and known["integral"] == 0 and known["sum_value"] == -16
    K = kn.combination_knot(basis, (18, -7))
    table = rho.family_table(K, 3, 100, verify_upto=3)
    values = [r["value"] for r in table["rows"]]
    family_ok = (values == [i * F(-16, 3) for i in range(101)] and len(set(values)) == 101
                 and all(r["direct_ok"] for r in table["rows"] if "direct" in r))
    counts = rho.table_pair_reports(table)
    direct_reports = [rho.obstruction_report(kn.multiple(K, i), kn.multiple(K, j), 3)["verdict"]
                      for i, j in ((0, 1), (1, 2), (0, 2))]
    reports_ok = counts == {"obstructed": 5050, "inconclusive": 0} and set(direct_reports) == {"obstructed"}
    elapsed = time.perf_counter() - t0
    ok = cert_ok and known_ok and family_ok and reports_ok
    report(5, "star certificate and distinct family", ok, elapsed, 30,
           f"(search -> {cert.coefficients if cert else None}, (18,-7) sum {known['sum_value']}, "
           f"{len(set(values))} distinct values, {counts['obstructed']} pairs obstructed)")


def test_criterion_6_handle_certificate(report):
    t0 = time.perf_counter()
    rng = random.Random(6)
    gh = eq.GroupPresentation.parse(["g", "h"], [])
    bases = [gh, eq.tower_presentation(3), eq.TRIVIAL_GROUP]
    bad = 0
    z2_ok = z_ok = True
    for _ in range(1000):
        n = rng.randint(1, 6)
        e = rng.choice([-7, -5, -3, -1, 1, 3, 5, 7, 9])
        S = eq.random_system(rng, n, rng.choice(bases), e)
        if not eq.validate_system(S, ZZ_2)[0]:
            bad += 1
            continue
        if eq.boundary_matrix(S) != [[-e if i == j else 0 for j in range(n)] for i in range(n)]:
            bad += 1
        cert2 = eq.homology_certificate(S, ZZ_2)
        if cert2["det"] != (-e) ** n:
            bad += 1
        z2_ok &= cert2["h_relative_trivial"]
        if abs(e) > 1:
            z_ok &= not eq.homology_certificate(S, ZZ)["h_relative_trivial"]
    snf_ok = all(eq.abelianization_snf(eq.tower_presentation(2 * k - 1)) == {"invariant_factors": [2, 2], "free_rank": 1}
                 for k in range(1, 6))
    elapsed = time.perf_counter() - t0
    ok = bad == 0 and z2_ok and z_ok and snf_ok
    report(6, "handle chain certificate", ok, elapsed, 10,
           f"(bad systems {bad}, Z_(2) certified {z2_ok}, Z rejects |e|>1 {z_ok}, H1 (Z/2)^2+Z {snf_ok})")


def test_criterion_7_locality(report):
    t0 = time.perf_counter()
    rng = random.Random(7)
    samples = lo.sample_conditioned(rng, 500)
    lemma_ok = all(lo.locality_criterion(A, ZZ_2)["unit_at_minus1_in_Z2"] for A in samples)
    parity_ok = True
    for _ in range(500):
        A = lo.random_laurent_matrix(rng)
        d1, dm = rational_det(lo.eval_matrix(A, 1)), rational_det(lo.eval_matrix(A, -1))
        parity_ok &= (d1 - dm) % 2 == 0 and lo.locality_criterion(A, ZZ)["parity_ok"]
    round_bad = 0
    for i in range(1000):
        A = samples[i % len(samples)]
        f = [F(rng.randint(-50, 50), rng.choice([1, 3, 5, 7, 9, 15])) for _ in range(A.size)]
        g = lo.solve_local(A, f, ZZ_2)
        if mat_vec(lo.eval_matrix(A, -1), g) != f:
            round_bad += 1
    elapsed = time.perf_counter() - t0
    ok = lemma_ok and parity_ok and round_bad == 0
    report(7, "determinant locality criteria", ok, elapsed, 10,
           f"(500 conditioned samples unit at -1: {lemma_ok}, parity {parity_ok}, round-trip failures {round_bad})")


def test_criterion_8_nilpotent_invisibility(report):
    t0 = time.perf_counter()
    z = tw.gen_z(3)
    invisible = se.nilpotent_invisible(z, 64)
    killed = all(not any(se.lcs_quotient(z, q)) for q in range(1, 65))
    own_prime = {}
    for p in (3, 5, 7):
        zp = tw.gen_z(p) ** p  # the order-p element z_p^p
        own_prime[p] = se.quotient_order(se.project_P3(zp, p))
    z_image = se.quotient_order(se.project_P3(z, 3))
    elapsed = time.perf_counter() - t0
    ok = invisible and killed and own_prime == {3: 3, 5: 5, 7: 7} and z_image == tw.order(z) == 9
    report(8, "nilpotent invisibility vs P^3 visibility", ok, elapsed, 5,
           f"(invisible up to 64: {invisible}, killed in all lcs quotients: {killed}, "
           f"order-p images {own_prime}, image of z_3 has order {z_image})")
