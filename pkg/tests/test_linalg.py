import random
from itertools import permutations

import pytest

from twistinv.cyclo import Cyclotomic, RootOfUnity, lcm
from twistinv.linalg import CycMatrix, NotFiniteOrder
from twistinv.polys import TruncSeries, UniPoly

from conftest import coset


def z(n, k=1, N=None):
    return Cyclotomic.zeta(n, k, N)


def cofactor_det(rows):
    """Laplace expansion along the first row."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = Cyclotomic.zero()
    for j in range(n):
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = rows[0][j] * cofactor_det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def test_det_small():
    assert CycMatrix.identity(3).det() == 1
    assert CycMatrix.diagonal([z(3), z(3, 2)]).det() == 1


@pytest.mark.parametrize("seed", range(5))
def test_det_monomial_matches_cofactor(seed):
    rng = random.Random(seed)
    perm = list(range(3))
    rng.shuffle(perm)
    rows = [[Cyclotomic.zero(6)] * 3 for _ in range(3)]
    for i, p in enumerate(perm):
        rows[i][p] = z(6, rng.randrange(6))
    m = CycMatrix.from_entries(rows, 6)
    assert m.det() == cofactor_det(rows)


def test_det_dense_matches_cofactor():
    rng = random.Random(7)
    rows = [[z(12, rng.randrange(12)) + rng.randrange(-2, 3) for _ in range(4)] for _ in range(4)]
    assert CycMatrix.from_entries(rows, 12).det() == cofactor_det(rows)


def test_char_series():
    assert CycMatrix.identity(2).char_series() == UniPoly([1, -2, 1])
    m = CycMatrix.diagonal([z(4), Cyclotomic.rational(-1, 4)], 4)
    want = UniPoly([1, -z(4)]) * UniPoly([1, 1])
    assert m.char_series() == want


def test_char_series_matches_eigenvalues():
    G = coset("G(3,3,3)").group
    for i in range(0, G.order, 5):
        h = G.element(i)
        want = UniPoly([1])
        for lam, mult in h.eigen_multiset().items():
            for _ in range(mult):
                want = want * UniPoly([1, -lam.to_cyclotomic()])
        assert h.char_series() == want


def test_element_order():
    assert CycMatrix.identity(3).scale(-1).element_order() == 2
    with pytest.raises(NotFiniteOrder):
        CycMatrix.from_entries([[1, 1], [0, 1]]).element_order(cap=50)


def test_eigen_multiset_small():
    assert CycMatrix.identity(4).eigen_multiset() == {RootOfUnity.one(): 4}
    d = CycMatrix.diagonal([z(3), z(3, 2)])
    assert d.eigen_multiset() == {RootOfUnity(3, 1): 1, RootOfUnity(3, 2): 1}


def test_eigen_multiset_vs_kernel_dimension():
    G = coset("G(3,3,3)").group
    for i in range(G.order):
        h = G.element(i)
        for lam, mult in h.eigen_multiset().items():
            W = lcm(h.N, lam.order)
            shifted = h.embed(W) - CycMatrix.identity(3, W).scale(lam.to_cyclotomic(W))
            assert len(shifted.kernel()) == mult   # G(3,3,3) elements are diagonalizable


def test_kernel():
    assert len(CycMatrix.zeros(2, 2).kernel()) == 2
    assert CycMatrix.identity(3).kernel() == []
    G = coset("G(4,2,2)").group
    for i in G.reflections:
        s = G.element(i)
        k = (s - CycMatrix.identity(2, s.N)).kernel()
        assert len(k) == 1
        assert s.fixed_dim() == 1


def test_inverse_and_matmul():
    G = coset("G(3,3,3)").group
    for i in range(0, G.order, 7):
        h = G.element(i)
        assert (h @ h.inverse()).is_identity()


def test_json_roundtrip():
    m = CycMatrix.from_entries([[z(5), 1], [Cyclotomic.rational(2, 5) / 3, z(5, 3)]], 5)
    assert CycMatrix.from_json(m.to_json()) == m


def test_series_ops():
    one_minus_x = TruncSeries(4, [1, -1])
    inv = one_minus_x.invert()
    assert inv == TruncSeries(4, [1, 1, 1, 1, 1])
    assert inv * one_minus_x == TruncSeries(4, [1])
    p = TruncSeries(6, [1, -1]) * TruncSeries(6, [1, 0, -1])
    # oracle: number of partitions of n into parts 1 and 2
    want = [n // 2 + 1 for n in range(7)]
    assert p.invert() == TruncSeries(6, want)
    assert want == [1, 1, 2, 2, 3, 3, 4]
