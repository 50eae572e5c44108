import json
import subprocess
import sys

import pytest

from pp7.cli import UsageError, main, parse_coeffs
from pp7.gf import classifiable_orders, field_of_order
from pp7.poly import Polynomial


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_classify_json(capsys):
    code, out, _ = run(capsys, "classify", "--q", "23", "--format", "json")
    assert code == 0
    d = json.loads(out)
    assert d["nonexceptional_count"] == 3 and d["q"] == 23 and "elapsed_ms" in d


def test_classify_jobs_byte_identical(capsys):
    outs = []
    for jobs in ("1", "8"):
        code, out, _ = run(capsys, "classify", "--q", "17", "--format", "json", "--no-elapsed", "--jobs", jobs)
        assert code == 0
        outs.append(out)
    assert outs[0] == outs[1]


def test_classify_other_formats(capsys, tmp_path):
    code, out, _ = run(capsys, "classify", "--q", "13", "--format", "csv")
    assert code == 0 and out.splitlines()[0].startswith("q,a5")
    code, out, _ = run(capsys, "classify", "--q", "13", "--verify")
    assert code == 0 and "golden diff: empty" in out
    dest = tmp_path / "r.json"
    code, out, _ = run(capsys, "classify", "--q", "11", "--format", "json", "--output", str(dest))
    assert code == 0 and out == ""
    assert json.loads(dest.read_text())["nonexceptional_count"] == 25


def test_is_pp(capsys):
    code, out, _ = run(capsys, "is-pp", "--q", "13", "--coeffs", "0,2,0,0,0,0,0,1")
    assert code == 0 and out.strip() == "true"
    code, out, _ = run(capsys, "is-pp", "--q", "13", "--coeffs", "0,1,0,0,0,0,0,1")
    assert code == 1 and out.strip() == "false"
    for method in ("bruteforce", "hermite"):
        code, out, _ = run(capsys, "is-pp", "--q", "11", "--septic", "0,0,0,5,0", "--method", method)
        assert code == 0
    code, out, _ = run(capsys, "is-pp", "--q", "11", "--septic", "0,0,0,5,0", "--format", "json")
    assert json.loads(out)["is_pp"] is True


def test_usage_errors(capsys):
    assert run(capsys, "is-pp", "--q", "13", "--coeffs", "0,0,garbage")[0] == 2
    assert run(capsys, "is-pp", "--q", "13", "--coeffs", "0,,1")[0] == 2
    assert run(capsys, "is-pp", "--q", "13", "--coeffs", "0,13")[0] == 2
    assert run(capsys, "is-pp", "--q", "12", "--coeffs", "0,1")[0] == 2
    assert run(capsys, "is-pp", "--q", "13")[0] == 2
    assert run(capsys, "is-pp", "--q", "13", "--coeffs", "4")[0] == 2
    assert run(capsys, "is-pp", "--q", "13", "--septic", "1,2")[0] == 2
    assert run(capsys, "canonical", "--q", "13", "--coeffs", "0,1,1")[0] == 2
    assert run(capsys, "classify", "--q", "8")[0] == 2
    assert run(capsys, "classify", "--q", "419")[0] == 2
    assert run(capsys, "classify")[0] == 2
    assert run(capsys, "classify", "--q", "9", "--modulus", "2,0,1")[0] == 2
    assert run(capsys, "classify", "--q", "9", "--modulus", "a,b")[0] == 2
    assert run(capsys, "verify-paper", "--q", "7")[0] == 2
    with pytest.raises(SystemExit) as err:
        main(["classify", "--q", "11", "--bogus"])
    assert err.value.code == 2
    with pytest.raises(SystemExit) as err:
        main(["classify", "--q", "11", "--jobs", "0"])
    assert err.value.code == 2


def test_parse_coeffs():
    f49 = field_of_order(49)
    e = f49.generator
    x = Polynomial.x(f49)
    assert parse_coeffs("0,1", f49) == x
    want = x**7 + e * x**5 + e**18 * x**3 + e**35 * x
    assert parse_coeffs("0,e^35,0,e^18,0,e,0,1", f49) == want
    assert parse_coeffs("0,e^83,0,e^66,0,e^49,0,1", f49) == want
    assert parse_coeffs("8,2e+3", f49) == Polynomial(f49, [8, 2 * e + 3])
    with pytest.raises(UsageError):
        parse_coeffs("0,0,garbage", f49)


def test_hermite_command(capsys):
    code, out, _ = run(capsys, "hermite", "--q", "11", "--septic", "0,0,0,5,0", "--format", "json")
    d = json.loads(out)
    assert code == 0 and d["passed"] and d["failing_k"] is None and d["cond1_sum"] != 0
    code, out, _ = run(capsys, "hermite", "--q", "13", "--septic", "0,0,0,0,1")
    assert code == 1 and "first failing k" in out


def test_exceptional_command(capsys):
    code, out, _ = run(capsys, "exceptional", "--q", "11")
    assert code == 0 and out.count("Dickson7") == 2
    code, out, _ = run(capsys, "exceptional", "--q", "49", "--format", "json")
    assert len(json.loads(out)["catalog"]) == 9
    code, out, _ = run(capsys, "exceptional", "--q", "49", "--format", "csv")
    assert len(out.strip().splitlines()) == 10
    code, out, _ = run(capsys, "exceptional", "--q", "27", "--septic", "0,0,-1,0,1")
    assert code == 1 and out.strip() == "non-exceptional"
    code, out, _ = run(capsys, "exceptional", "--q", "11", "--coeffs", "0,9,0,5,0,1,0,1")
    assert code == 0 and out.strip() == "Dickson7"
    code, out, _ = run(capsys, "exceptional", "--q", "13", "--septic", "0,0,0,0,1")
    assert code == 1 and "not a permutation" in out


def test_canonical_and_related(capsys):
    code, out, _ = run(capsys, "canonical", "--q", "49", "--coeffs", "0,e^35,0,e^18,0,e,0,1")
    assert code == 0 and out.strip() == "(e,0,e^18,0,e^35)"
    code, out, _ = run(capsys, "related", "--q", "13", "--septic", "0,0,0,0,2", "--other-septic", "0,0,0,0,6")
    assert code == 1 and out.strip() == "not related"
    code, out, _ = run(capsys, "related", "--q", "13", "--septic", "0,0,0,0,2", "--other", "0,2e^6,0,0,0,0,0,1", "--format", "json")
    d = json.loads(out)
    assert code == 0 and d["related"]
    assert run(capsys, "related", "--q", "13", "--septic", "0,0,0,0,2")[0] == 2


def test_verify_paper_command(capsys):
    code, out, _ = run(capsys, "verify-paper", "--q", "9")
    assert code == 0 and out.strip() == "q = 9: ok"
    code, out, _ = run(capsys, "verify-paper", "--q", "343", "--format", "json")
    assert code == 0 and json.loads(out)["diff"] == {"343": []}


def test_list_fields(capsys):
    code, out, _ = run(capsys, "list-fields")
    assert code == 0 and len(out.strip().splitlines()) == len(classifiable_orders())
    code, out, _ = run(capsys, "list-fields", "--format", "json")
    fields = json.loads(out)["fields"]
    assert fields[0]["q"] == 9 and fields[0]["modulus"] == [2, 2, 1]
    code, out, _ = run(capsys, "list-fields", "--format", "csv")
    assert out.splitlines()[0].startswith("q,p,r")


def test_jobs_environment(capsys, monkeypatch):
    monkeypatch.setenv("PP7_JOBS", "2")
    code, out, _ = run(capsys, "classify", "--q", "11", "--format", "json", "--no-elapsed")
    assert code == 0
    monkeypatch.setenv("PP7_JOBS", "x")
    assert run(capsys, "classify", "--q", "11")[0] == 2


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "pp7.cli", "is-pp", "--q", "13", "--coeffs", "0,2,0,0,0,0,0,1"],
        capture_output=True,
        text=True,
    )
    assert res.returncode == 0 and res.stdout.strip() == "true"
