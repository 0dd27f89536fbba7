from __future__ import annotations

import json
import shutil
import subprocess

import pytest

from grouptool import __version__, build
from grouptool.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_dsub_text(capsys):
    code, out, _ = run(capsys, "dsub", "--group", "S3", "--m", "3", "--n", "2")
    assert code == 0
    assert "D_{3,2}: order 3 subgroup=true nilpotent=true" in out
    assert out.startswith("group S3 (order 6)")


def test_dsub_json_schema(capsys):
    code, out, _ = run(capsys, "dsub", "--group", "S3xS3", "--m", "3", "--n", "2", "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert set(doc) == {"command", "group", "params", "result", "version"}
    assert doc["group"] == {"name": "S3xS3", "order": 36, "source": build("S3xS3").source}
    assert doc["params"] == {"m": 3, "n": 2}
    assert doc["result"]["D_m"]["order"] == 9
    assert doc["result"]["D_mn"]["order"] == 1
    assert doc["version"] == __version__


def test_json_round_trip_is_byte_identical(capsys, tmp_path):
    path = tmp_path / "e.json"
    assert main(["eseries", "--group", "S4", "--m", "8", "--n", "3", "--format", "json", "--out", str(path)]) == 0
    text = path.read_text()
    assert json.dumps(json.loads(text), indent=2) + "\n" == text
    assert capsys.readouterr().out == ""


def test_text_and_json_agree(capsys):
    _, text, _ = run(capsys, "eseries", "--group", "S4", "--pi", "2")
    _, js, _ = run(capsys, "eseries", "--group", "S4", "--pi", "2", "--format", "json")
    doc = json.loads(js)
    assert doc["params"] == {"m": 8, "n": 3}
    assert doc["result"]["orders"] == [1, 4, 12, 24]
    for k, o in enumerate(doc["result"]["orders"]):
        assert f"E_{k}: order {o} " in text
    assert f"classification {doc['result']['classification']}" in text


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", "--group", "F20", "--m", "5", "--n", "4", "--format", "json")
    res = json.loads(out)["result"]
    assert code == 0
    assert res["classification"] == "frobenius"
    assert len(res["frobenius_kernel"]) == 5


def test_unclassified_exit_code(capsys):
    code, out, _ = run(capsys, "classify", "--group", "S4", "--m", "3", "--n", "8")
    assert code == 1
    assert "classification unclassified" in out


@pytest.mark.parametrize(
    "argv,needle",
    [
        (["dsub", "--group", "S3", "--m", "4", "--n", "2"], "coprime"),
        (["dsub", "--group", "S3", "--m", "3"], "together"),
        (["dsub", "--group", "S3"], "parameters required"),
        (["dsub", "--group", "S3", "--pi", "3", "--m", "3", "--n", "2"], "--pi"),
        (["dsub", "--group", "S3", "--pi", "4"], "primes"),
        (["dsub", "--group", "Nope", "--m", "3", "--n", "2"], "unknown group"),
        (["dsub", "--gens", "(1 2", "--m", "3", "--n", "2"], "unclosed"),
        (["verify", "--suite", "no-such-suite"], "no-such-suite"),
        (["verify", "--group", "Nope"], "not in the catalog"),
    ],
)
def test_usage_errors(capsys, argv, needle):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert needle in err


def test_missing_cayley_file(capsys, tmp_path):
    code, _, err = run(capsys, "dsub", "--cayley", str(tmp_path / "none.csv"), "--m", "1", "--n", "1")
    assert code == 2 and "--cayley" in err


def test_argparse_rejects_two_sources(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["dsub", "--group", "S3", "--gens", "(1 2)", "--m", "3", "--n", "2"])
    assert exc.value.code == 2


def test_gens_and_cayley_inputs(capsys, tmp_path):
    code, out, _ = run(capsys, "dsub", "--gens", "(1 2 3), (1 2)", "--pi", "3", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["group"]["order"] == 6 and doc["result"]["D_mn"]["order"] == 3
    table = build("A4").table
    path = tmp_path / "a4.csv"
    path.write_text("\n".join(",".join(map(str, row)) for row in table.tolist()))
    code, out, _ = run(capsys, "eseries", "--cayley", str(path), "--m", "4", "--n", "3", "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert doc["group"]["name"] == "a4"
    assert doc["result"]["orders"] == [1, 4, 12]


def test_unwritable_out(capsys, tmp_path):
    code, _, err = run(capsys, "catalog", "--list", "--out", str(tmp_path / "missing" / "x.txt"))
    assert code == 1 and "cannot write" in err


def test_catalog(capsys):
    code, out, _ = run(capsys, "catalog", "--list", "--max-order", "8", "--format", "json")
    names = [e["name"] for e in json.loads(out)["result"]["entries"]]
    assert code == 0 and "Q8" in names and "D8" in names and "S4" not in names
    code, out, _ = run(capsys, "catalog", "--group", "SL(2,3)")
    assert code == 0 and "order: 24" in out and "nilpotent: False" in out


def test_verify_single_suite(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "example-2.4")
    assert code == 0 and "all suites passed" in out
    code, out, _ = run(capsys, "verify", "--suite", "thm-r", "--group", "S3xC3", "--format", "json")
    doc = json.loads(out)
    assert code == 1 and doc["result"]["ok"] is False


@pytest.mark.skipif(shutil.which("grouptool") is None, reason="console script not installed")
def test_console_script(tmp_path):
    p = subprocess.run(
        ["grouptool", "dsub", "--group", "F20", "--m", "5", "--n", "4"], capture_output=True, text=True, cwd=tmp_path
    )
    assert p.returncode == 0
    assert "D_{5,4}: order 5" in p.stdout
