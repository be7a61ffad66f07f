import io
import json

import pytest

from twistinv.cli import run


def call(*argv):
    s = io.StringIO()
    code = run(list(argv), stream=s)
    return code, s.getvalue()


def test_factors_json():
    code, out = call("factors", "3D4", "--json")
    assert code == 0
    obj = json.loads(out)
    assert obj["d"] == [2, 4, 4, 6]
    assert sorted((e["order"], e["exp"]) for e in obj["eps"]) == [(1, 0), (1, 0), (3, 1), (3, 2)]


def test_factors_dual_matches_codegrees():
    code, out = call("factors", "2G5", "--module", "Vdual", "--json")
    assert code == 0
    assert json.loads(out)["d"] == [0, 6]


def test_regular_orders_text():
    code, out = call("regular", "2F4")
    assert code == 0 and out.strip() == "orders: 1 2 4 8 12 24"


def test_regular_single_zeta():
    code, out = call("regular", "3D4", "--zeta", "1/12", "--json")
    assert code == 0
    obj = json.loads(out)
    assert obj["criterion"] is True and obj["oracle"] is not None


def test_verify_identity():
    code, out = call("verify", "G(4,2,2;zeta=1)", "--identity", "twistpw", "--json")
    assert code == 0 and json.loads(out)["ok"] is True


def test_verify_all_small():
    code, out = call("verify", "G(3,1,2)", "--all")
    assert code == 0 and "FAIL" not in out


def test_harmonics_wellgen():
    code, out = call("harmonics", "G(3,3,3)", "--check", "wellgen", "--json")
    assert code == 0 and json.loads(out)["well_generated"] is True
    code, out = call("harmonics", "G(4,2,2)", "--check", "wellgen", "--json")
    obj = json.loads(out)
    assert obj["well_generated"] is False and obj["min_generators"] == 3


def test_coinv_eqdims():
    code, out = call("coinv", "G(2,1,2)", "--eqdims", "2", "--json")
    obj = json.loads(out)
    assert code == 0 and obj["dims"] == [1, 2, 2, 2, 1] and obj["eqdims"]["sums"] == [4, 4]


def test_coinv_induction():
    code, out = call("coinv", "A2", "--induction")
    assert code == 0


@pytest.mark.parametrize("argv", [["factors", "nope"], ["bogus"], ["factors", "G(4,2,2)", "--conductor", "3"],
                                  ["verify", "A2"], ["regular", "A2", "--zeta", "x"]])
def test_usage_errors_exit_2(argv):
    assert call(*argv)[0] == 2


def test_error_json_shape():
    code, out = call("factors", "nope", "--json")
    obj = json.loads(out)
    assert code == 2 and obj["exit"] == 2 and set(obj) == {"error", "message", "exit"}


def test_group_cap_exit_2():
    assert call("factors", "F4", "--cap", "100")[0] == 2


def test_cache_round_trip(tmp_path):
    a = call("factors", "G(4,2,2;zeta=2)", "--json", "--cache", str(tmp_path))
    assert list(tmp_path.iterdir())
    b = call("factors", "G(4,2,2;zeta=2)", "--json", "--cache", str(tmp_path))
    assert a == b and a[0] == 0


def test_conductor_override_same_answer():
    a = call("factors", "G(4,2,2)", "--json")
    b = call("factors", "G(4,2,2)", "--json", "--conductor", "12")
    assert a[0] == b[0] == 0
    assert json.loads(a[1])["d"] == json.loads(b[1])["d"]


def test_threads_do_not_change_output():
    assert call("regular", "2G5", "--threads", "4") == call("regular", "2G5")


def test_table_exceptional_reports_3g422():
    code, out = call("table", "--family", "exceptional", "--json")
    rows = {r["key"]: r for r in json.loads(out)}
    assert code == 1
    assert rows["3G422"]["checks"] == {"degrees": True, "codegrees": True, "regular": False}
    assert all(r["checks"]["regular"] is not False for k, r in rows.items() if k != "3G422")
    assert any("4,4,6" in f for f in rows["4G333"]["flags"])
