import json
import subprocess
import sys

import pytest

from entrolab.cli import job_from_mapping, main, run
from entrolab.errors import InputError

from conftest import fixture_path


def invoke(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def as_json(capsys, *argv):
    code, out, err = invoke(capsys, *argv, "--json")
    return code, json.loads(out), err


def test_lambda_frob25(capsys):
    code, doc, _ = as_json(capsys, "lambda", "--input", fixture_path("frob25.toml"), "--n", "2")
    assert code == 0
    assert doc["result"]["lambda"] == "625"
    assert doc["schema_version"] == 1
    code, out, _ = invoke(capsys, "lambda", "--input", fixture_path("frob25.toml"), "--n", "2")
    assert "lambda: 625" in out


def test_kunz_cusp(capsys):
    code, doc, _ = as_json(capsys, "kunz", "--input", fixture_path("cusp.toml"), "--max-n", "3")
    assert code == 0
    res = doc["result"]
    assert res["verdict"] == "CERTIFIED_NOT_REGULAR" and res["witness_n"] == 2
    assert res["lambda"]["sequence"] == [[1, "10"], [2, "50"], [3, "250"]]
    assert res["cross_check"]["status"] == "NOT_REGULAR"
    assert "CERTIFIED_NOT_REGULAR" in doc["certificates"]


def test_noninvariant_map(capsys):
    code, doc, err = as_json(capsys, "check", "--input", fixture_path("noninvariant.toml"))
    assert code == 1
    assert doc["error"]["code"] == "WELL_DEFINEDNESS_FAILURE"
    assert "y^2" in doc["error"]["relation"]
    assert "WELL_DEFINEDNESS_FAILURE" in err


def test_not_finite_is_refusal(capsys):
    code, doc, _ = as_json(capsys, "lambda", "--input", fixture_path("not_finite.toml"), "--cap", "40")
    assert code == 2
    assert doc["error"]["code"] == "NOT_FINITE_LENGTH"
    ladder = doc["error"]["ladder"]
    assert ladder[0] == [2, "3"] and ladder[-1][0] == 40


def test_hk_refusal_and_supplied_q(capsys):
    code, doc, _ = as_json(capsys, "hk", "--input", fixture_path("cusp.toml"))
    assert code == 2 and doc["error"]["code"] == "Q_UNAVAILABLE"
    code, doc, _ = as_json(capsys, "hk", "--input", fixture_path("cusp.toml"), "--q", "5")
    assert code == 0
    assert doc["result"]["ratios"] == [[1, "2"], [2, "2"], [3, "2"]]
    assert doc["result"]["provenance"] == "user-supplied"
    code, doc, _ = as_json(capsys, "hk", "--input", fixture_path("cusp.toml"), "--q", "abc")
    assert code == 1


@pytest.mark.parametrize("verb,key,expected", [
    ("check", "valid", True),
    ("contracting", "verdict", "CONTRACTING"),
    ("entropy", "exact_if_multiplicative", False),
    ("nagata", "verdict", "NOT_FLAT_CERTIFIED"),
    ("phi", "strict", True),
    ("hilbert-samuel", "values", [[1, "1"], [2, "3"], [3, "5"], [4, "7"], [5, "9"], [6, "11"]]),
    ("regularity", "witness_N", 3),
])
def test_every_verb_on_cusp(capsys, verb, key, expected):
    code, doc, _ = as_json(capsys, verb, "--input", fixture_path("cusp.toml"))
    assert code == 0
    assert doc["result"][key] == expected


def test_swap_reports_both_sides(capsys):
    code, doc, _ = as_json(capsys, "kunz", "--input", fixture_path("swap_node.toml"))
    assert code == 0
    assert doc["result"]["verdict"] == "INCONCLUSIVE_NOT_CONTRACTING"
    assert doc["result"]["cross_check"]["status"] == "NOT_REGULAR"


def test_usage_errors_exit_1(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["lambda"])
    assert exc.value.code == 1
    code, _, err = invoke(capsys, "lambda", "--input", "/nonexistent.toml")
    assert code == 1 and "cannot read" in err


def test_bad_job_mappings():
    base = {"ring": {"characteristic": 5, "variables": ["x", "y"]}, "map": {"x": "x^5", "y": "y^5"}}
    doc, code = run(job_from_mapping(base, "lambda"))
    assert code == 0
    bad = dict(base, map={"x": "x^5"})
    with pytest.raises(InputError):
        job_from_mapping(bad, "lambda")
    doc, code = run(job_from_mapping(dict(base, map={"x": "x y", "y": "y"}), "check"))
    assert code == 1 and doc["error"]["code"] == "SYNTAX_ERROR"
    doc, code = run(job_from_mapping(dict(base, map={"x": "x + 1", "y": "y"}), "check"))
    assert code == 1 and doc["error"]["code"] == "NOT_LOCAL"
    doc, code = run(job_from_mapping({"ring": {"characteristic": 6, "variables": ["x"]}}, "regularity"))
    assert code == 1


def test_json_is_deterministic_across_processes():
    cmd = [sys.executable, "-m", "entrolab.cli", "nagata", "--input", fixture_path("cusp.toml"),
           "--samples", "8", "--seed", "7", "--json"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a
