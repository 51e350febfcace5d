import json
import subprocess
import sys

import pytest

from pineta.cli import EXIT_EVAL, EXIT_GOLDEN, EXIT_OK, EXIT_USAGE, main
from pineta.tables import Row, Table


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_eval_json(capsys):
    code, out, _ = run(capsys, "eval", "Q", "--format", "json")
    assert code == EXIT_OK
    assert json.loads(out)["eta_set"] == [14, 18]


def test_eval_text_with_oracle(capsys):
    code, out, _ = run(capsys, "eval", "--oracle", "csum(3, RP4)")
    assert code == EXIT_OK
    assert "{3/8, -3/8}" in out and "agrees" in out


def test_compare(capsys):
    code, out, _ = run(capsys, "compare", "twist(S2gR)", "S2gR")
    assert code == EXIT_OK
    assert "Exotic" in out and "R1" in out
    code, out, _ = run(capsys, "compare", "--format", "json", "--oracle", "Q # CP2", "RP4 # CP2")
    assert code == EXIT_OK and json.loads(out)["smooth"]["outcome"] == "Diffeomorphic"


def test_cover(capsys):
    code, out, _ = run(capsys, "cover", "A")
    assert code == EXIT_OK and "S3xS1" in out and "C3" in out


def test_tables(capsys):
    code, out, _ = run(capsys, "tables", "propValues")
    assert code == EXIT_OK and "PASS" in out
    code, out, _ = run(capsys, "tables", "thmInv", "--format", "json")
    assert code == EXIT_OK and json.loads(out)["ok"] is True


def test_parse_error_exit_code(capsys):
    code, _, err = run(capsys, "eval", "RP4 #s1 S2xS2")
    assert code == EXIT_USAGE and "column 5" in err


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as info:
        main(["eval"])
    assert info.value.code == EXIT_USAGE
    with pytest.raises(SystemExit) as info:
        main(["tables", "nope"])
    assert info.value.code == EXIT_USAGE


def test_evaluation_error_exit_code(capsys):
    code, _, err = run(capsys, "cover", "CP2")
    assert code == EXIT_EVAL and "orientable" in err
    code, _, _ = run(capsys, "eval", "--max-enum", "2", "--oracle", "KbxT2")
    assert code == EXIT_EVAL


def test_golden_mismatch_exit_code(capsys, monkeypatch):
    bad = Table("fake", "forced mismatch", [Row("1", "x", {"v": 1}, {"v": 2})])
    monkeypatch.setattr("pineta.cli.reproduce", lambda target: bad)
    code, out, _ = run(capsys, "tables", "thm0")
    assert code == EXIT_GOLDEN and "FAIL" in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "pineta", "eval", "RP4", "--format", "json"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["eta_set"] == [2, 30]
