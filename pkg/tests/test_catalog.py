import pytest

from twistinv.catalog import UnknownKey, build, catalog_listing, g422_gamma, parse_key, table_keys
from twistinv.cyclo import Cyclotomic
from twistinv.linalg import CycMatrix
from twistinv.molien import v_factors

from conftest import coset


def test_imprimitive_twisted_build():
    C = coset("G(4,2,2;zeta=2)")
    assert C.group.order == 16
    assert v_factors(C).degrees == [4, 4]


def test_g422_gamma_matches_display():
    N = 12
    z4, z3 = Cyclotomic.zeta(4, 1, N), Cyclotomic.zeta(3, 1, N)
    pre = (z4 + 1) / (2 * z3)
    want = CycMatrix.from_entries([[-pre, pre], [pre * z4, pre * z4]], N)
    assert coset("3G422").gamma.embed(N) == want
    assert g422_gamma().det() == z3


def test_d4_untwisted_part():
    C = coset("3D4")
    assert C.group.order == 192
    assert v_factors(C).degrees == [2, 4, 4, 6]


def test_parse_key():
    assert str(parse_key("G(4,2,2;zeta=1)")) == "G(4,2,2)"
    assert str(parse_key("G(6, 3, 2; zeta=3)")) == "G(6,3,2;zeta=3)"
    assert parse_key("2F4").family == "twisted"
    assert parse_key("B3").params == ("B", 3)
    for bad in ("G(4,3,2)", "G(4,2,2;zeta=3)", "F5", "H3", ""):
        with pytest.raises(UnknownKey):
            parse_key(bad)


def test_table_keys():
    keys = [str(k) for k in table_keys()]
    for k in ("G(2,1,2)", "G(4,2,2;zeta=2)", "G(3,3,3;zeta=3)", "4G333", "2F4"):
        assert k in keys
    assert len(keys) == len(set(keys))


def test_listing():
    assert "swap" in catalog_listing()


@pytest.mark.parametrize("key", ["G5", "G7", "G(3,1,2)", "B3", "A3", "D4", "swap"])
def test_orders_match_degrees(key):
    C = coset(key)
    prod = 1
    for d in v_factors(C).degrees:
        prod *= d
    assert prod == C.group.order
