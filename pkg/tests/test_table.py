import pytest

from twistinv import table as T
from twistinv.catalog import imprimitive_order, parse_key, table_keys
from twistinv.catalog import build
from twistinv.cyclo import RootOfUnity, roots_of_unity
from twistinv.molien import V, scaled_factors, scaling_check, v_factors


def test_keys_respect_order_bound():
    for k in table_keys():
        if k.family == "imprimitive":
            de, e, r, ep = k.params
            assert imprimitive_order(de, e, r) <= 5000 and e % ep == 0 and r >= 2


def test_imprimitive_reference_closed_forms():
    # G(4,2,2) with e' = 2: degrees 4, (4, -1); codegrees 0, 4
    ref = T.imprimitive_reference(4, 2, 2, 2)
    assert [d for d, _ in ref.degrees] == [4, 4]
    assert ref.degrees[1][1] == RootOfUnity.make(2, 1)
    assert ref.regular(RootOfUnity.make(8, 1)) and not ref.regular(RootOfUnity.one())
    ref = T.imprimitive_reference(3, 3, 3, 1)
    assert [d for d, _ in ref.degrees] == [3, 6, 3]
    assert [d for d, _ in ref.codegrees] == [0, 3, 3]


@pytest.mark.parametrize("key", ["G(4,2,2;zeta=2)", "G(3,3,3;zeta=3)", "G(6,3,2;zeta=3)", "G(2,1,3)",
                                 "4G333", "2G333", "3D4", "2G5", "2G7", "2F4"])
def test_rows_agree(key):
    row = T.compute_row(key)
    assert row.checks == {"degrees": True, "codegrees": True, "regular": True}
    assert row.ok


def test_g333_rows_flag_table_cell():
    for key in ("4G333", "2G333"):
        row = T.compute_row(key)
        assert sorted(row.degrees.degrees) == [3, 3, 6]
        assert any("4,4,6" in f for f in row.flags)


def test_3g422_regular_row_differs():
    row = T.compute_row("3G422")
    assert row.checks["degrees"] and row.checks["codegrees"]
    assert row.checks["regular"] is False
    assert row.orders == {1, 2, 3, 4, 6, 12}


def test_2g7_scalar_class():
    # the representative is pinned by search, so compare up to gamma -> z^-1 gamma
    C = build("2G7")
    fs = v_factors(C)
    want = sorted((d - 1, e.sort_key()) for d, e in T.EXCEPTIONAL_REFERENCE["2G7"].degrees)
    hits = [z for z in roots_of_unity(24)
            if sorted(scaled_factors(fs, z, V.scalar_character(z)).multiset()) == want]
    assert hits
    z = RootOfUnity.make(12, 1)
    assert scaling_check(C, V, z)


def test_render_has_every_row():
    rows = [T.compute_row(k) for k in ("G(2,1,2)", "2G5")]
    text = T.render(rows)
    assert len(text.splitlines()) == 3 and "2G5" in text


def test_json_shape():
    obj = T.compute_row("2G5").to_json()
    assert obj["regular"] == "o(zeta) in {1,2,3,6,8,24}"
    assert [x["d"] for x in obj["degrees"]] == [6, 12]


@pytest.mark.slow
def test_wider_imprimitive_window():
    keys = [k for k in table_keys(max_de=12) if k.family == "imprimitive"]
    assert len(keys) == 162
    assert all(T.compute_row(k).ok for k in keys)
