"""Randomized checks.  Hypothesis runs derandomized, so a failure reproduces
from the same seed on every run."""

from fractions import Fraction
from math import gcd

from hypothesis import given, settings, strategies as st

from twistinv.cyclo import Cyclotomic, RootOfUnity
from twistinv.molien import V, VDUAL, ModuleRep, n_of_module, scaling_check
from twistinv.regularity import inegalite_check

from conftest import coset

settings.register_profile("repro", derandomize=True, max_examples=60, deadline=None)
settings.load_profile("repro")

CONDUCTORS = [1, 3, 4, 5, 7, 8, 9, 12, 15]
POOL = ["G(4,2,2;zeta=2)", "G(3,3,3;zeta=3)", "G(6,3,2;zeta=3)", "G(3,1,2)", "3G422", "4G333", "2G333",
        "2G5", "3D4", "swap", "B3"]


@st.composite
def elements(draw, N=None):
    N = N or draw(st.sampled_from(CONDUCTORS))
    coeffs = draw(st.lists(st.integers(-4, 4), min_size=N, max_size=N))
    den = draw(st.integers(1, 3))
    return Cyclotomic.from_coeffs(N, [Fraction(c, den) for c in coeffs])


@st.composite
def triples(draw):
    N = draw(st.sampled_from(CONDUCTORS))
    return draw(elements(N)), draw(elements(N)), draw(elements(N))


@given(triples())
def test_ring_axioms(t):
    a, b, c = t
    assert a + b == b + a and a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0 and a * 1 == a and a + 0 == a


@given(elements())
def test_inverses(a):
    if a:
        assert a * a.inverse() == 1
        assert (a / a) == 1


@given(elements(), elements())
def test_mixed_conductors(a, b):
    s = a + b
    assert s.embed(s.N) == a.embed(s.N) + b.embed(s.N)


@given(st.sampled_from(CONDUCTORS), st.data())
def test_galois_composition(N, data):
    units = [k for k in range(1, max(N, 2)) if gcd(k, N) == 1]
    k = data.draw(st.sampled_from(units))
    l = data.draw(st.sampled_from(units))
    a = data.draw(elements(N))
    b = data.draw(elements(N))
    assert a.galois(k).galois(l) == a.galois((k * l) % max(N, 1))
    assert (a * b).galois(k) == a.galois(k) * b.galois(k)
    assert (a + b).galois(k) == a.galois(k) + b.galois(k)


@given(st.integers(1, 24), st.integers(0, 23), st.integers(1, 24), st.integers(0, 23))
def test_roots_of_unity_group(n, k, m, j):
    x, y = RootOfUnity.make(n, k), RootOfUnity.make(m, j)
    assert (x * y).to_cyclotomic() == x.to_cyclotomic() * y.to_cyclotomic()
    assert (x * x.inverse()).is_one()
    assert (x ** n).is_one()


@given(st.sampled_from(POOL), st.integers(1, 12), st.integers(0, 11), st.sampled_from([V, VDUAL]))
def test_scaling_law(key, n, k, M):
    assert scaling_check(coset(key), M, RootOfUnity.make(n, k))


@given(st.sampled_from(POOL), st.data())
def test_inequalities(key, data):
    C = coset(key)
    units = [k for k in range(1, max(C.N, 2)) if gcd(k, C.N) == 1]
    ks = data.draw(st.lists(st.sampled_from(units), min_size=1, max_size=3, unique=True))
    assert inegalite_check(C, galois=ks)


@given(st.sampled_from(POOL + ["G5", "G(4,4,3)"]), st.data())
def test_top_exterior_power(key, data):
    C = coset(key)
    units = [k for k in range(1, max(C.N, 2)) if gcd(k, C.N) == 1]
    k = data.draw(st.sampled_from(units))
    base = data.draw(st.sampled_from([V, VDUAL]))
    M = ModuleRep.galois(base, k)
    assert n_of_module(C, ModuleRep.exterior(M, C.r)) == n_of_module(C, M)
