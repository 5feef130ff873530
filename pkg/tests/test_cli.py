import io
import json
import subprocess
import sys

import pytest

from hyperminors import projection
from hyperminors.cli import EXIT_PASS, EXIT_USAGE, UsageError, budget_from_env, main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def test_segre_2x2():
    code, text = run("segre", "2", "2")
    assert code == EXIT_PASS
    assert "x[1,2]*x[2,1] - x[1,1]*x[2,2]" in text.splitlines()


def test_segre_2x2x2_json():
    code, text = run("segre", "2", "2", "2", "--format", "json")
    doc = json.loads(text)
    assert code == 0 and doc["raw_minors"] == 18 and doc["count"] == 12 and doc["span"] == 9


def test_segre_vector_is_zero_ideal():
    code, text = run("segre", "2")
    assert code == 0 and "zero ideal" in text


def test_segre_veronese_listing_and_verify():
    code, text = run("segre-veronese", "-n", "2", "-d", "3", "--format", "json")
    doc = json.loads(text)
    assert code == 0 and doc["variables"] == 4
    code, text = run("segre-veronese", "-n", "2,2", "-d", "1,2", "--verify", "--format", "json")
    doc = json.loads(text)
    assert code == 0 and doc["status"] == "pass"


def test_project_listing():
    code, text = run("project", "-d", "4", "-t", "2", "-k", "0", "--format", "json")
    doc = json.loads(text)
    assert code == 0 and len(doc["linear_relations"]) == 6
    assert doc["A"]["shape"] == [3, 1, 9]


def test_project_verify_text():
    code, text = run("project", "-d", "5", "-t", "3", "-k", "2", "--verify")
    assert code == 0 and "status: pass" in text


def test_project_verify_prime_field():
    code, text = run("project", "-d", "5", "-t", "2", "-k", "1", "--verify",
                     "--field", "GF(1048583)", "--format", "json")
    assert code == 0 and json.loads(text)["field"] == "GF(1048583)"


@pytest.mark.parametrize("argv", [
    ["project", "-d", "4", "-t", "3", "-k", "0"],
    ["segre-veronese", "-n", "2,2", "-d", "1"],
    ["segre", "0"],
    ["segre", "2", "--field", "GF(4)"],
    ["nonsense"],
    [],
])
def test_usage_errors(argv):
    code, _ = run(*argv)
    assert code == EXIT_USAGE


def test_budget_env():
    b = budget_from_env({"HYPERMINORS_BUDGET": "seconds=5,pairs=10"})
    assert b.max_seconds == 5.0 and b.max_pairs == 10
    assert budget_from_env({}).max_seconds == 120.0
    with pytest.raises(UsageError):
        budget_from_env({"HYPERMINORS_BUDGET": "bogus=1"})


def test_json_is_byte_identical():
    argv = ["project", "-d", "6", "-t", "2", "-k", "1", "--seed", "7", "--verify", "--format", "json"]
    assert run(*argv) == run(*argv)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hyperminors", "segre", "2", "2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "span 1" in proc.stdout


def test_genericity_failure_exits_one(monkeypatch, capsys):
    def fail(profile, max_retries=8):
        raise projection.GenericityFailure("no generic matrix", [{"seed": 0, "reason": "F dependent"}])

    monkeypatch.setattr(projection, "build_hilbert_burch", fail)
    code, _ = run("project", "-d", "4", "-t", "2", "-k", "0")
    assert code == 1
    assert "F dependent" in capsys.readouterr().err
