import random
from math import factorial

import pytest

from twistinv.catalog import build, g422_gamma, g422_listed_generators, g5_generators, imprimitive_generators
from twistinv.cyclo import Cyclotomic, lcm
from twistinv.groups import (NotEigenvector, NotNormalizing, coset_new, enumerate_group, parabolic,
                             random_flat_vector, steinberg_holds, theta_v)
from twistinv.linalg import CycMatrix

from conftest import coset


def test_enumerate_g333():
    G = enumerate_group(imprimitive_generators(3, 3, 3))
    assert G.order == 3 ** 3 * factorial(3) // 3 == 54


def test_enumerate_g5():
    G = enumerate_group(g5_generators())
    assert G.order == 72
    assert sum(c.size for c in G.classes) == 72
    assert G.order == 6 * 12


def test_trivial_group():
    G = enumerate_group([CycMatrix.identity(2)])
    assert G.order == 1
    assert G.reflections == []


@pytest.mark.parametrize("key", ["G(3,3,3)", "G(4,2,2)", "G5", "B3", "G(3,1,2)"])
def test_group_invariants(key):
    G = coset(key).group
    rng = random.Random(1)
    for _ in range(30):
        a, b = G.element(rng.randrange(G.order)), G.element(rng.randrange(G.order))
        assert (a @ b) in G
        assert a.inverse() in G
    assert G.element(G.identity_index).is_identity()
    for i in G.reflections:
        assert G.element(i).fixed_dim() == G.r - 1
    assert sum(H.e - 1 for H in G.arrangement) == len(G.reflections)
    members = sorted(i for c in G.classes for i in c.members)
    assert members == list(range(G.order))


def test_parabolic_extremes():
    G = coset("G(4,2,2)").group
    W = G.N
    v = [Cyclotomic.one(W), Cyclotomic.rational(3, W)]
    assert all(H.evaluate(v) for H in G.arrangement)
    Gv, C = parabolic(G, v)
    assert Gv.order == 1 and C == [G.identity_index]
    Gv, C = parabolic(G, [Cyclotomic.zero(W)] * 2)
    assert Gv.order == G.order


def test_parabolic_on_one_hyperplane_f4():
    G = coset("F4").group
    rng = random.Random(3)
    H = G.arrangement[5]
    from twistinv.linalg import kernel_lists
    basis = kernel_lists([list(H.normal)], G.N, G.r)
    for _ in range(20):
        v = [Cyclotomic.zero(G.N)] * G.r
        for b in basis:
            v = [x + y * rng.randint(-20, 20) for x, y in zip(v, b)]
        if sum(1 for K in G.arrangement if not K.evaluate(v)) == 1:
            break
    Gv, C = parabolic(G, v)
    assert Gv.order == H.e == 2
    assert sorted(G.parent_indices(Gv)) == sorted(C)


@pytest.mark.parametrize("key", ["G(3,3,3)", "G(4,2,2)", "G5", "B3", "G(3,1,2)", "A3"])
def test_steinberg_random(key):
    G = coset(key).group
    rng = random.Random(11)
    for _ in range(50):
        assert steinberg_holds(G, random_flat_vector(G, rng))


def test_coset_new_identity_and_g422():
    G = coset("G(4,2,2)").group
    C = coset_new(G, G.identity())
    assert C.gamma_order == 1
    g = g422_gamma()
    C = coset_new(G, g)
    gens = g422_listed_generators()
    gi = g.inverse()
    images = [g @ s.embed(g.N) @ gi for s in gens]
    targets = [s.embed(g.N) for s in gens]
    perm = [targets.index(m) for m in images]
    assert sorted(perm) == [0, 1, 2] and all(p != i for i, p in enumerate(perm))


def test_coset_new_rejects_non_normalizing():
    G = coset("G(3,3,3)").group
    with pytest.raises(NotNormalizing):
        coset_new(G, CycMatrix.diagonal([-1, 1, 1]))


def test_theta_v():
    G = coset("G(3,3,3)").group
    v = [Cyclotomic.one(3), Cyclotomic.rational(2, 3), Cyclotomic.rational(5, 3)]
    assert theta_v(G.identity(), v) == 1
    for de, e, r, ep in [(4, 2, 2, 2), (6, 3, 2, 3), (3, 3, 3, 3)]:
        C = build(f"G({de},{e},{r};zeta={ep})")
        e1 = [Cyclotomic.one()] + [Cyclotomic.zero()] * (r - 1)
        d = de // e
        assert theta_v(C.gamma, e1) == Cyclotomic.zeta(ep * d)
    s = G.element(G.reflections[0])
    H = next(H for H in G.arrangement if G.reflections[0] in H.reflections)
    from twistinv.linalg import kernel_lists
    w = kernel_lists([list(H.normal)], G.N, 3)[0]
    assert theta_v(s, w) == 1
    with pytest.raises(NotEigenvector):
        theta_v(s, [Cyclotomic.one(3), Cyclotomic.rational(2, 3), Cyclotomic.rational(5, 3)])
