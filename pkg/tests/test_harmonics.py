import pytest

from twistinv import harmonics as H
from twistinv.cyclo import Cyclotomic, RootOfUnity
from twistinv.linalg import rref_lists
from twistinv.molien import TRIVIAL, VDUAL, V, codegree_factors, module_factors, psi_polynomial, v_factors
from twistinv.polys import MultiPoly

from conftest import coset


def X(i, r):
    return MultiPoly.variable(i, r)


def in_span(target, polys):
    """target lies in the linear span of polys (exact rank test)."""
    keys = sorted(set(target.terms).union(*[p.terms.keys() for p in polys]))
    W = 1
    for p in list(polys) + [target]:
        for c in p.terms.values():
            W = W * c.N // __import__("math").gcd(W, c.N)
    z = Cyclotomic.zero(W)

    def col(p):
        return [p.terms.get(k, z).embed(W) if p.terms.get(k) is not None else z for k in keys]

    cols = [col(p) for p in polys]
    rows_a = [[c[i] for c in cols] for i in range(len(keys))]
    rows_b = [row + [col(target)[i]] for i, row in enumerate(rows_a)]
    return len(rref_lists(rows_a, W, len(polys))[1]) == len(rref_lists(rows_b, W, len(polys) + 1)[1])


def test_invariant_space_small():
    G = coset("G(3,3,3)").group
    assert H.invariant_space(G, TRIVIAL, 0) == [(MultiPoly.constant(1, 3),)]
    assert len(H.invariant_space(G, TRIVIAL, 3)) == 2


@pytest.mark.parametrize("key", ["G(4,2,2)", "G5", "B3"])
def test_canonical_degree_one_element(key):
    # sum X_i (x) v_i lies in S (x) V, which is S (x) M* for M = V*
    C = coset(key)
    G = C.group
    el = tuple(X(i, G.r) for i in range(G.r))
    assert H.is_invariant(el, G, VDUAL, C.N)
    space = H.invariant_space(G, VDUAL, 1)
    assert len(space) == 1
    lam = None
    for a, b in zip(space[0], el):
        c = a.proportional_to(b) if a else None
        assert (c is None) == (not a)
        if c is not None:
            lam = c if lam is None else lam
            assert c == lam


def test_basic_invariants_g422_contain_textbook():
    bi = H.basic_invariants(coset("G(4,2,2)"))
    assert bi.degrees == [4, 4]
    p1 = X(0, 2) ** 4 + X(1, 2) ** 4
    p2 = (X(0, 2) * X(1, 2)) ** 2
    assert in_span(p1, bi.polys) and in_span(p2, bi.polys)


def test_basic_invariants_g313():
    bi = H.basic_invariants(coset("G(3,1,3)"))
    r = 3
    x3 = [X(i, r) ** 3 for i in range(r)]
    e1 = x3[0] + x3[1] + x3[2]
    e2 = x3[0] * x3[1] + x3[0] * x3[2] + x3[1] * x3[2]
    e3 = x3[0] * x3[1] * x3[2]
    assert bi.degrees == [3, 6, 9]
    p3, p6, p9 = bi.polys
    # basic invariants are only unique up to polynomials in lower ones
    assert in_span(e1, [p3])
    assert in_span(e2, [p3 ** 2, p6])
    assert in_span(e3, [p3 ** 3, p3 * p6, p9])


def test_rank_one_invariant():
    bi = H.basic_invariants(coset("G(5,1,1)"))
    assert bi.polys[0].proportional_to(X(0, 1) ** 5) is not None


def test_3g422_invariants_and_eps():
    C = coset("3G422")
    bi = H.basic_invariants(C)
    p1 = X(0, 2) ** 4 + X(1, 2) ** 4
    p2 = (X(0, 2) * X(1, 2)) ** 2
    for p in bi.polys:
        assert in_span(p, [p1, p2])
    assert in_span(p1, bi.polys) and in_span(p2, bi.polys)
    # our action convention: eps (1, z3^2); the quoted (1, z3) is for f -> f o gamma
    assert sorted(e.sort_key() for e in bi.eps) == [(1, 0), (3, 2)]
    for p, e in zip(bi.polys, bi.eps):
        assert H.act_poly(p, C.gamma, C.N) == p.scale(e.to_cyclotomic(C.N))


def test_harmonic_bases_match_factors():
    C = coset("G(4,2,2)")
    assert H.harmonic_module_basis(C, VDUAL).multiset() == [(1, (1, 0)), (5, (1, 0))]
    hb = H.harmonic_module_basis(C, TRIVIAL)
    assert hb.multiset() == [(0, (1, 0))]
    for key in ("3G422", "4G333", "2G5"):
        for M in (V, VDUAL):
            hb = H.harmonic_module_basis(coset(key), M)
            fs = module_factors(coset(key), M)
            assert hb.multiset() == sorted((m, e.sort_key()) for m, e in fs.pairs)


def _lproduct(G, power):
    out = MultiPoly.constant(1, G.r)
    for h in G.arrangement:
        out = out * MultiPoly.linear(list(h.normal), G.r) ** power(h)
    return out


def test_gutkin():
    assert H.gutkin_check(coset("G(5,1,1)"), V)
    G = coset("G(3,3,3)").group
    assert len(G.arrangement) == 9
    assert H.gutkin_check(coset("G(3,3,3)"), VDUAL)
    assert psi_polynomial(G, VDUAL) == _lproduct(G, lambda h: 1)
    G = coset("G(4,2,2)").group
    assert all(h.e == 2 for h in G.arrangement)
    assert H.gutkin_check(coset("G(4,2,2)"), V)
    assert psi_polynomial(G, V) == _lproduct(G, lambda h: 1)


def test_discriminant_matrix():
    C = coset("G(4,2,2)")
    rep = H.disc_matrix(C, V)
    want = _lproduct(C.group, lambda h: 2)
    assert want.degree == 12
    assert rep.delta.proportional_to(want) is not None
    rep = H.disc_matrix(C, TRIVIAL)
    assert len(rep.matrix) == 1 and rep.delta.proportional_to(MultiPoly.constant(1, 2)) is not None
    rep = H.disc_matrix(coset("G(4,1,1)"), V)
    assert rep.delta.proportional_to(X(0, 1) ** 4) is not None


def test_express_in_basics():
    C = coset("G(3,3,3)")
    bi = H.basic_invariants(C)
    assert H.express_in_basics(bi.polys[1], bi) == {(0, 1, 0): 1}
    f = bi.polys[0] * bi.polys[1] + bi.polys[2].scale(3)
    assert H.express_in_basics(f, bi) == {(1, 1, 0): 1, (0, 0, 1): 3}


def test_3g422_discriminant_not_in_ideal():
    C = coset("3G422")
    bi = H.basic_invariants(C)
    expr = H.delta_expression(C)
    sharp = [i for i, e in enumerate(bi.eps) if not e.is_one()]
    assert any(all(a[i] == 0 for i in sharp) for a in expr)
    assert H.ideal_regular(C, RootOfUnity.one())


def test_wellgen_g333():
    rep = H.wellgen_structure(coset("G(3,3,3)"), matrix_check=False)
    assert rep.well_generated and rep.degree_condition
    dv = sorted(v_factors(coset("G(3,3,3)")).degrees)
    dd = sorted(codegree_factors(coset("G(3,3,3)")).degrees, reverse=True)
    assert [a + b for a, b in zip(dv, dd)] == [6, 6, 6]


def test_wellgen_g422_negative():
    rep = H.wellgen_structure(coset("G(4,2,2)"), matrix_check=False)
    assert not rep.well_generated and not rep.degree_condition
    assert rep.min_generators == 3
    G = coset("G(4,2,2)").group
    # independent: no pair of reflections generates G
    from itertools import combinations
    assert all(H.generated_order(G, list(p)) < G.order for p in combinations(G.reflections, 2))
    assert H.generated_order(G, rep.generators) == G.order


def test_wellgen_2g5():
    rep = H.wellgen_structure(coset("2G5"))
    assert rep.well_generated and rep.matching and rep.regular_top and rep.monic
    from twistinv.regularity import is_regular_criterion
    assert is_regular_criterion(coset("2G5"), RootOfUnity.make(24, 1))
