import pytest

import valx

CUBIC = "base padic 3\next a : x^3 - 1/3 @ -1/3\ngamma rational 1/5\npair a\n"


def test_run_session():
    code, out, err = valx.run(CUBIC + "kras\nic\n")
    assert code == 0
    assert err == ""
    assert "kras = 1/6" in out
    assert "ic.field = K(a)^h" in out


def test_run_reports_exit_codes():
    assert valx.run("")[0] == 0
    assert valx.run("base padic 3\nic\n")[0] == 2
    code, _, err = valx.run("base ratfun F3 t\next a : x^2 - 1/t @ -1/3\n")
    assert code == 3
    assert "InconsistentRootValue" in err


def test_json_mode():
    import json

    _, out, _ = valx.run(CUBIC + "kras\n", json=True)
    obj = json.loads(out.splitlines()[0])
    assert obj["command"] == "kras"
    assert obj["results"]["kras"] == "1/6"


def test_workspace_operations():
    w = valx.Workspace(CUBIC)
    assert w.value("a") == "-1/3"
    assert w.kras("a") == "1/6"
    assert w.conj("a") == ["1/6", "1/6"]
    assert w.omega("x^3 - 1/3") == "8/15"
    assert w.omega_q() == "8/15"
    assert w.delta("x - a") == "1/5"
    assert w.j_count() == 1
    assert w.ic()["field"] == "K(a)^h"
    r = w.report()
    assert r["kind"] == "residue-transcendental"
    assert r["valuegroup"] == "(1/15)Z"
    assert r["index"] == "5"


def test_artin_schreier_minpoly():
    w = valx.Workspace("base ratfun F3 t\next a1 : x^3 - x - 1/t @ -1/3\next a2 : x^2 - 1/t @ -1/2\n")
    assert w.minpoly("t*a1*a2") == "x^6 + t*x^4 + t^2*x^2 + 2*t"
    assert w.value("t*a1*a2") == "1/6"


def test_errors_carry_the_kind():
    w = valx.Workspace("base padic 3\n")
    with pytest.raises(valx.ValxError) as info:
        w.kras("3")
    assert info.value.kind == "DegreeOne"
    assert valx.ostrowski_defect(3, 1, 1, 3) == 1
