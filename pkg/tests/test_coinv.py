import numpy as np
import pytest

from twistinv import coinv as CI
from twistinv.cyclo import Cyclotomic, cyc, divisors
from twistinv.groups import NotEigenvector
from twistinv.molien import v_factors

from conftest import coset


def poincare_oracle(degrees):
    """Coefficients of prod (1 + t + ... + t^(d-1)), by integer convolution."""
    out = np.array([1], dtype=object)
    for d in degrees:
        out = np.convolve(out, np.ones(d, dtype=object))
    return [int(x) for x in out]


def test_symmetric_group_dims():
    gc = CI.coinvariant_character(coset("G(1,1,3)"))
    assert gc.dims() == [1, 2, 2, 1]
    assert gc.dims() == poincare_oracle([2, 3])


@pytest.mark.parametrize("key", ["G(2,1,2)", "A3", "B3", "G(4,2,2)", "G(3,3,3)", "G5", "G(3,1,2)"])
def test_dims_match_degree_product(key):
    C = coset(key)
    assert CI.coinvariant_character(C).dims() == poincare_oracle(v_factors(C).degrees)


def test_residue_sums():
    dims = CI.coinvariant_character(coset("G(1,1,3)")).dims()
    assert [CI.residue_sum(dims, 3, k) for k in range(3)] == [2, 2, 2]
    assert CI.residue_sum(dims, 1, 0) == 6


@pytest.mark.slow
def test_f4_residue_sums():
    dims = CI.coinvariant_character(coset("F4")).dims()
    assert dims == poincare_oracle([2, 6, 8, 12])
    assert [CI.residue_sum(dims, 12, k) for k in range(12)] == [96] * 12


@pytest.mark.parametrize("key", ["G(1,1,3)", "G(4,2,2)", "G(3,3,3)", "G5", "B3"])
def test_eqdims_all_divisors(key):
    C = coset(key)
    ds = sorted({x for d in v_factors(C).degrees for x in divisors(d)})
    for d in ds:
        for k in range(d):
            assert CI.eqdims_check(C, d, k, 0)


def test_eqdims_rejects_foreign_divisor():
    with pytest.raises(ValueError):
        CI.eqdims_check(coset("A2"), 5, 0, 1)


def test_eqdims_fails_off_divisor():
    # 4 divides no degree of G(1,1,3); residue sums over 4 are [1+..] = 2,1,1,2
    dims = CI.coinvariant_character(coset("G(1,1,3)")).dims()
    assert [CI.residue_sum(dims, 4, k) for k in range(4)] == [1, 1, 2, 2]


@pytest.mark.parametrize("key", ["G(4,2,2)", "G(3,3,3)", "G(3,1,2)"])
def test_top_degree_is_determinant(key):
    # g.f = f o g^-1 makes the Jacobian transform by det(g)
    C = coset(key)
    G = C.group
    top = CI.top_degree_character(C)
    for cl, val in zip(G.classes, top.values):
        assert val == cyc(G.element(cl.rep).det(), C.N)


def test_regular_character():
    for key in ("G(4,2,2)", "G5", "G(4,4,3)"):
        assert CI.regular_character_holds(coset(key))


def test_induction_identity_and_reflections_g212():
    res = CI.induction_suite(coset("G(2,1,2)"))
    labels = {s.label.split(",")[0] for s, _, _ in res}
    assert "identity" in labels and any(l.startswith("reflection") for l in labels)
    assert any(s.d == 2 and k == 1 for s, k, _ in res)
    assert all(ok for _, _, ok in res)


def test_induction_regular_element_a2():
    C = coset("A2")
    samples = CI.induction_samples(C)
    reg = [s for s in samples if s.label.startswith("regular")]
    assert len(reg) == 1 and reg[0].d == 3
    assert C.group.element(reg[0].gamma_index).element_order() == 3
    for k in range(3):
        lhs, rhs = CI.induction_sides(C, reg[0].gamma_index, reg[0].vector, k)
        assert lhs == rhs


def test_induction_identity_reduces_to_coinvariants():
    # gamma = 1, v general: K = 1 and the induced character is the regular one
    C = coset("G(3,1,2)")
    s = CI.induction_samples(C)[0]
    assert s.label.startswith("identity") and s.d == 1
    lhs, rhs = CI.induction_sides(C, s.gamma_index, s.vector, 0)
    assert lhs == rhs == CI.coinvariant_character(C).total()


def test_induction_rejects_non_eigenvector():
    C = coset("A2")
    G = C.group
    idx = G.reflections[0]
    with pytest.raises(NotEigenvector):
        CI.induction_sides(C, idx, [Cyclotomic.one(1), cyc(1)], 0)
