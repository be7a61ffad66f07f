from fractions import Fraction

import pytest

from twistinv.cyclo import Cyclotomic, RootOfUnity
from twistinv.molien import (TRIVIAL, VDUAL, V, ModuleRep, codegree_factors, fake_degree, module_factors,
                             molien_trace_series, n_of_module, psi_polynomial, scaling_check, v_factors)
from twistinv.polys import MultiPoly, TruncSeries, UniPoly

from conftest import coset


def R(n, k=1):
    return RootOfUnity.make(n, k)


def pairs(fs):
    return sorted((d, e.sort_key()) for d, e in fs.with_degrees())


def test_trivial_series_g333():
    C = coset("G(3,3,3)")
    got = molien_trace_series(C, TRIVIAL, 0, 6)
    # count solutions of 3a + 3b + 6c = n
    want = [sum(1 for a in range(7) for b in range(7) for c in range(2) if 3 * a + 3 * b + 6 * c == n)
            for n in range(7)]
    assert want == [1, 0, 0, 2, 0, 0, 4]
    assert got == TruncSeries(6, want)


def test_constant_term_is_trivial_multiplicity():
    for key in ("G(3,3,3)", "G(4,2,2)", "G(1,1,3)"):
        C = coset(key)
        fixed = len(C.group.fixed_space())
        assert molien_trace_series(C, VDUAL, 0, 0).coeffs[0] == fixed


def test_twisted_series_2g5_matches_factors():
    C = coset("2G5")
    D = 12
    got = molien_trace_series(C, V, 1, D)
    W = C.N
    num = TruncSeries(D, [0] * (D + 1))
    for m, e in module_factors(C, V).pairs:
        c = [0] * (D + 1)
        c[m] = e.to_cyclotomic(W)
        num = num + TruncSeries(D, c)
    den = TruncSeries(D, [1])
    for d, e in v_factors(C).with_degrees():
        c = [0] * (D + 1)
        c[0] = 1
        c[d] = -e.to_cyclotomic(W)
        den = den * TruncSeries(D, c)
    assert got == num * den.invert()
    assert pairs(module_factors(C, V)) == [(5, (1, 0)), (11, (2, 1))]


def test_factor_examples():
    assert pairs(v_factors(coset("3D4"))) == [(2, (1, 0)), (4, (3, 1)), (4, (3, 2)), (6, (1, 0))]
    assert [(m, e.sort_key()) for m, e in module_factors(coset("3D4"), V).pairs] == \
        [(1, (1, 0)), (3, (3, 1)), (3, (3, 2)), (5, (1, 0))]
    assert module_factors(coset("G(3,3,3)"), TRIVIAL).pairs == [(0, RootOfUnity.one())]
    assert pairs(v_factors(coset("4G333"))) == sorted([(3, (4, 1)), (3, (4, 3)), (6, (1, 0))])


@pytest.mark.parametrize("de,e,r,ep", [(4, 2, 2, 2), (6, 2, 2, 2), (6, 3, 2, 3), (4, 1, 2, 1), (2, 1, 3, 1),
                                       (4, 2, 3, 2), (6, 3, 2, 1)])
def test_imprimitive_closed_forms_d_gt_1(de, e, r, ep):
    C = coset(f"G({de},{e},{r};zeta={ep})")
    d = de // e
    want = [(k * e * d, (1, 0)) for k in range(1, r)] + [(r * d, R(ep, -1).sort_key())]
    assert pairs(v_factors(C)) == sorted(want)
    assert pairs(codegree_factors(C)) == sorted((k * e * d, (1, 0)) for k in range(r))


def test_codegree_examples():
    assert pairs(codegree_factors(coset("2F4"))) == [(0, (1, 0)), (4, (2, 1)), (6, (1, 0)), (10, (2, 1))]
    assert pairs(codegree_factors(coset("G(3,3,3)"))) == [(0, (1, 0)), (3, (1, 0)), (3, (1, 0))]


def test_n_of_module():
    assert n_of_module(coset("F4").group, V) == 24 == len(coset("F4").group.reflections)
    assert n_of_module(coset("G(3,3,3)").group, TRIVIAL) == 0
    G = coset("G(4,2,2)").group
    assert n_of_module(G, VDUAL) == len(G.arrangement) == 6


def _hyperplane_product(G, power):
    out = MultiPoly.constant(1, G.r)
    for H in G.arrangement:
        out = out * MultiPoly.linear(list(H.normal), G.r) ** power(H)
    return out


@pytest.mark.parametrize("key", ["G(4,2,2)", "G(3,3,3)", "G(3,1,2)", "G5"])
def test_psi_polynomials(key):
    G = coset(key).group
    pv = psi_polynomial(G, VDUAL)
    assert pv == _hyperplane_product(G, lambda H: 1)
    assert pv.degree == len(G.arrangement)
    assert psi_polynomial(G, V) == _hyperplane_product(G, lambda H: H.e - 1)


def test_psi_trivial_group():
    from twistinv.groups import enumerate_group, untwisted
    from twistinv.linalg import CycMatrix
    G = enumerate_group([CycMatrix.identity(2)])
    assert psi_polynomial(untwisted(G), V) == MultiPoly.constant(1, 2)


def test_fake_degrees():
    assert fake_degree(coset("G(3,3,3)"), TRIVIAL) == UniPoly([1])
    assert fake_degree(coset("G(1,1,3)"), V) == UniPoly([1, 1, 1])
    assert fake_degree(coset("2G5"), V) == UniPoly.monomial(5, 1) - UniPoly.monomial(11, 1)


def test_scaling():
    C = coset("G(4,2,2)")
    assert scaling_check(C, V, RootOfUnity.one())
    z4 = R(4)
    assert scaling_check(C, V, z4)
    shifted = module_factors(C.shifted(z4), V)
    assert [e for _, e in shifted.pairs] == [z4 ** (m + 1) for m, _ in shifted.pairs]


def test_squares_of_factors():
    a = v_factors(coset("4G333"))
    b = v_factors(coset("2G333"))
    assert pairs(b) == sorted((d, (e ** 2).sort_key()) for d, e in a.with_degrees())


def test_module_parse():
    assert str(ModuleRep.parse("Vdual")) == "V*"
    with pytest.raises(ValueError):
        ModuleRep.parse("W")
