"""Acceptance criteria 1-7.  Each criterion records one PASS/FAIL line that is
printed in the terminal summary (see conftest.py)."""

import random
import time

import pytest

from twistinv import coinv as CI
from twistinv import harmonics as H
from twistinv import regularity as R
from twistinv.catalog import table_keys
from twistinv.cyclo import Cyclotomic, divisors, lcm
from twistinv.groups import coset_new, enumerate_group, general_vector, random_flat_vector, steinberg_holds
from twistinv.linalg import CycMatrix
from twistinv.molien import V, VDUAL, module_factors, n_of_module_closed, n_of_module_gutkin, v_factors
from twistinv.table import compute_row

from conftest import coset, record

EXTRA = ["A2", "A3", "B3", "D4", "F4", "G5", "G7", "G15", "swap", "G(4,4,3)"]
CATALOG = [str(k) for k in table_keys()] + EXTRA
KNOWN_TABLE_DIFFERENCES = {("3G422", "regular")}


def irreducible(C):
    G = C.group
    return len(R.irreducible_components(G)) == 1 and not G.fixed_space()


# ---------------------------------------------------------------- 1

def table_failures():
    t = time.time()
    rows = [compute_row(k) for k in table_keys()]
    elapsed = time.time() - t
    fails = sorted((r.key, name) for r in rows for name, ok in r.checks.items() if ok is False)
    flagged = [r.key for r in rows if any("4,4,6" in f for f in r.flags)]
    return rows, fails, flagged, elapsed


def test_criterion_1_table():
    rows, fails, flagged, elapsed = table_failures()
    ok = not fails
    record(1, ok, f"{len(rows)} rows in {elapsed:.0f}s; differences: "
                  f"{', '.join(f'{k} {n}' for k, n in fails) or 'none'}; flagged G333 cells: {', '.join(flagged)}")
    # everything but the documented 3G422 regular set matches
    assert set(fails) == KNOWN_TABLE_DIFFERENCES
    assert sorted(flagged) == ["2G333", "4G333"]
    assert elapsed < 120


@pytest.mark.xfail(strict=True, reason="3G422 regular set: the quoted condition zeta^4 = 1 omits the "
                                       "certified zeta_3-regular gamma (see ledger)")
def test_criterion_1_strict():
    assert not table_failures()[1]


# ---------------------------------------------------------------- 2

def test_criterion_2_three_way():
    total, bad = 0, []
    for key in CATALOG:
        C = coset(key)
        n, b = R.three_way_disagreements(C, ideal=C.r <= 3)
        total += n
        bad += b
    record(2, not bad, f"{len(CATALOG)} cosets, {total} candidates, {len(bad)} disagreements")
    assert not bad, bad[:5]


# ---------------------------------------------------------------- 3

def test_criterion_3_identities():
    failed, count = [], 0
    for key in CATALOG:
        reps = R.identity_suite(coset(key))
        count += len(reps)
        failed += [f"{key}: {r.name}" for r in reps if not r.ok]
    record(3, not failed, f"{count} identity checks on {len(CATALOG)} cosets, {len(failed)} failures")
    assert not failed, failed[:5]


# ---------------------------------------------------------------- 4

def factor_routes_agree(key):
    C = coset(key)
    return all(H.harmonic_module_basis(C, M).multiset() == module_factors(C, M).multiset() for M in (V, VDUAL))


def test_criterion_4_factor_routes():
    keys = [k for k in CATALOG if coset(k).r <= 3]
    bad = [k for k in keys if not factor_routes_agree(k)]
    record(4, not bad, f"V and V* on {len(keys)} rank <= 3 cosets; F4 in the slow tier; mismatches: {bad or 'none'}")
    assert not bad


@pytest.mark.slow
@pytest.mark.parametrize("key", ["F4", "2F4"])
def test_criterion_4_f4(key):
    t = time.time()
    ok = factor_routes_agree(key)
    record(f"4 ({key}, slow tier)", ok, f"V and V* in {time.time() - t:.0f}s")
    assert ok


# ---------------------------------------------------------------- 5

def eigen_sample_vectors(C, rng, count=4):
    G = C.group
    for _ in range(count):
        i = rng.randrange(G.order)
        h = C.element(i, 1)
        o = h.element_order()
        W = lcm(C.N, o)
        for lam in h.eigen_multiset(o):
            yield i, general_vector(R.eigenspace(h, lam, W), G.arrangement, W)


def reducible_shift_example():
    G = enumerate_group([CycMatrix.diagonal([-1, 1]), CycMatrix.diagonal([1, -1])])
    return coset_new(G, CycMatrix.diagonal([Cyclotomic.one(4), Cyclotomic.zeta(4, 1, 4)], 4))


def test_criterion_5_structure():
    problems = []
    rng = random.Random(20)
    counts = {"gutkin": 0, "wellgen": 0, "eqlists": 0}
    for key in CATALOG:
        C = coset(key)
        G = C.group
        if C.r <= 3:
            for M in (V, VDUAL):
                H.gutkin_check(C, M)
                if not n_of_module_gutkin(C, M) == n_of_module_closed(C, M) == module_factors(C, M).N:
                    problems.append(f"{key}: N({M}) routes differ")
                H.disc_matrix(C, M)
            counts["gutkin"] += 1
        if not all(steinberg_holds(G, random_flat_vector(G, rng)) for _ in range(50)):
            problems.append(f"{key}: Steinberg")
        for i, v in eigen_sample_vectors(C, rng):
            counts["eqlists"] += 1
            if not R.eqlists_check(C, v, g_index=i):
                problems.append(f"{key}: eqlists at g = {i}")
        if irreducible(C):
            rep = H.wellgen_structure(C, matrix_check=C.r <= 3)
            counts["wellgen"] += 1
            if rep.notes or (rep.well_generated and not rep.ok()):
                problems.append(f"{key}: wellgen {rep.notes}")
        rep = R.existence_check(C)
        if rep.method != "shift":
            R.certify_witness(C, rep.g_index, rep.zeta, rep.vector)
    neg = H.wellgen_structure(coset("G(4,2,2)"), matrix_check=False)
    if neg.well_generated or neg.min_generators != 3:
        problems.append("G(4,2,2) negative case")
    if R.existence_check(coset("swap")).method != "cyclic":
        problems.append("swap example")
    if R.existence_check(reducible_shift_example()).method != "shift":
        problems.append("reducible shift example")
    record(5, not problems, f"Gutkin/discriminant on {counts['gutkin']} cosets, wellgen on {counts['wellgen']}, "
                            f"{counts['eqlists']} eigenvector samples; problems: {problems or 'none'}")
    assert not problems


# ---------------------------------------------------------------- 6

def test_criterion_6_coinvariants():
    problems, n_ind = [], 0
    for key in CATALOG:
        C = coset(key)
        if C.group.order > 1200:
            continue
        if not CI.regular_character_holds(C):
            problems.append(f"{key}: regular character")
        for d in sorted({x for deg in v_factors(C).degrees for x in divisors(deg)}):
            if not all(CI.eqdims_check(C, d, k, 0) for k in range(d)):
                problems.append(f"{key}: eqdims {d}")
        for s, k, ok in CI.induction_suite(C):
            n_ind += 1
            if not ok:
                problems.append(f"{key}: induction {s.label} k={k}")
    record(6, not problems, f"{n_ind} induction checks; problems: {problems or 'none'}")
    assert not problems


# ---------------------------------------------------------------- 7

def test_criterion_7_properties():
    import test_properties as P

    names = ["test_ring_axioms", "test_inverses", "test_mixed_conductors", "test_galois_composition",
             "test_roots_of_unity_group", "test_scaling_law", "test_inequalities", "test_top_exterior_power"]
    failed = []
    for name in names:
        try:
            getattr(P, name)()
        except AssertionError as e:  # hypothesis re-raises with the shrunk example
            failed.append(f"{name}: {e}")
    # plain seeded sweep of the scaling law: failures name the seed
    for seed in range(5):
        rng = random.Random(seed)
        key = rng.choice(P.POOL)
        z = P.RootOfUnity.make(rng.randint(1, 12), rng.randint(0, 11))
        for M in (V, VDUAL):
            from twistinv.molien import scaling_check
            if not scaling_check(coset(key), M, z):
                failed.append(f"scaling law, seed {seed}: {key} {M} {z}")
    record(7, not failed, f"{len(names)} property suites plus 5 seeded sweeps; failures: {failed or 'none'}")
    assert not failed
