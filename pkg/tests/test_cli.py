import io
import json
import shutil
import subprocess

import pytest

from fnc_forge.census import ArcReport, CurveStats
from fnc_forge.cli import run
from fnc_forge.poly import ValueSetReport
from fnc_forge.sepcurves import FncReport
from fnc_forge.superelliptic import GenusReport


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


def test_field_info():
    code, text = call("field", "info", "--field", "2^1:2")
    assert code == 0
    info = json.loads(text)
    assert (info["p"], info["q"], info["Q"], info["k"]) == (2, 2, 4, 2)


def test_curve_fnc_fermat_roundtrip():
    code, text = call("curve", "fnc", "--field", "2^1:2", "--f", "x^3", "--g", "y^3 + 1")
    assert code == 0
    rep = FncReport.from_dict(json.loads(text))
    assert rep.divisibility_verdict and rep.mills_verdict and rep.method_agreement


@pytest.mark.parametrize("method", ["divisibility", "mills"])
def test_curve_fnc_single_method(method):
    code, text = call("curve", "fnc", "--field", "3", "--f", "x^4 - x^2", "--g", "y^4 - y^2", "--method", method)
    assert code == 0
    assert FncReport.from_dict(json.loads(text)).verdict is False


def test_value_set_and_mvsp():
    code, text = call("poly", "value-set", "--field", "2^1:2", "--f", "x^3")
    assert code == 0
    rep = ValueSetReport.from_dict(json.loads(text))
    assert rep.to_dict() == json.loads(text)
    code, text = call("mvsp", "check", "--field", "2^1:2", "--f", "x^3")
    assert json.loads(text)["is_mvsp"] is True
    code, text = call("mvsp", "structure", "--field", "3^1:2", "--f", "x^4")
    assert code == 0
    code, text = call("mvsp", "w-list", "--field", "2^1:2")
    lines = [json.loads(t) for t in text.splitlines()]
    from fnc_forge.field import field_from_label
    from fnc_forge.mvsp import w_family

    assert [r["f"] for r in lines] == [f.to_list() for f in w_family(field_from_label("2^1:2"))]


def test_super_verbs():
    code, text = call("super", "genus", "--field", "2^1:2", "--super", "3:x^2+x")
    assert code == 0 and GenusReport.from_dict(json.loads(text)).genus == 1
    code, text = call("super", "fnc", "--field", "2^1:2", "--n", "3", "--f", "x^2+x")
    assert code == 0 and json.loads(text)["agree"]
    code, text = call("super", "reduce", "--field", "2^1:2", "--super", "3:x^3+1", "--x0", "1")
    rep = json.loads(text)
    assert rep["garcia_before"] and rep["garcia_after"] and len(rep["reduced"]["f"]) == 3
    code, text = call("super", "checks", "--field", "2^1:2", "--super", "3:x^2+x")
    assert code == 0 and json.loads(text)["passed"]


def test_points_and_arc():
    code, text = call("points", "count", "--field", "5^3:1", "--super", "62:x^62+(x+1)^62+1", "--nu", "1")
    st = json.loads(text)
    st.pop("affine"), st.pop("at_infinity")
    st = CurveStats.from_dict(st)
    assert code == 0 and st.N == 5766 and st.genus == 1830 and st.sv_bound_value == 5766
    code, text = call("arc", "check", "--field", "2^1:3", "--super", "7:x^7+1", "--d", "7")
    rep = ArcReport.from_dict(json.loads(text))
    assert rep.is_arc and not rep.is_complete and len(rep.points) == 21
    code, text = call("points", "count", "--field", "3", "--curve", "x*y - 1")
    assert code == 0 and json.loads(text)["N"] == 4


def test_census_formats():
    code, text = call("census", "run", "--q", "4", "--format", "csv")
    assert code == 0
    rows = text.splitlines()
    assert rows[0].split(",")[0] == "N" and len(rows) == 27
    code, text = call("census", "run", "--q", "5", "--mode", "constructive", "--ns", "2")
    assert all(json.loads(t)["n"] == 2 for t in text.splitlines())
    code, text = call("census", "run", "--q", "4", "--format", "text")
    assert "corollary_passed: True" in text


def test_outputs_are_byte_identical():
    argv = ("census", "verify-paper", "--items", "1,4,13,18", "--format", "json")
    assert call(*argv) == call(*argv)
    argv = ("census", "run", "--q", "7", "--jobs", "2")
    assert call(*argv) == call(*argv[:-2])


def test_verify_suite_negative_control():
    code, text = call("census", "verify-paper", "--items", "4,5", "--hermitian-f", "x^2+x+1", "--format", "json")
    rep = json.loads(text)
    assert code == 1 and rep["failed"] == [5]


def test_usage_errors(capsys):
    assert call("field", "info", "--field", "6")[0] == 2
    assert call("curve", "fnc", "--field", "2^1:2", "--f", "x^3")[0] == 2
    assert call("super", "genus", "--field", "3", "--super", "3:x^2+1")[0] == 2
    assert call("super", "genus", "--field", "3", "--super", "nonsense")[0] == 2
    assert call("points", "count", "--field", "2^1:2", "--f", "x^3 + ", "--g", "y")[0] == 2
    assert call("nosuch", "verb")[0] == 2
    assert "error" in capsys.readouterr().err


@pytest.mark.skipif(shutil.which("fnc-forge") is None, reason="console script not installed")
def test_console_script():
    res = subprocess.run(["fnc-forge", "field", "info", "--field", "3^1:2", "--format", "text"], capture_output=True, text=True)
    assert res.returncode == 0 and "Q: 9" in res.stdout
