import json
import subprocess
import sys

import pytest

from zetalg.algebra import complete_graph
from zetalg.cli import main
from zetalg.inputs import algebra_to_dict


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_local_zeta_petersen(capsys):
    code, out, _ = run(capsys, "local-zeta", "--builtin", "petersen", "--prime", "2", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["numerator"] == [1, -1, 2] and data["p"] == 2 and data["r"] == 3


def test_count_text(capsys):
    code, out, _ = run(capsys, "count", "--builtin", "kn:2", "--prime", "2", "--kmax", "4")
    assert code == 0 and out.strip() == "1,1,3,5,7"


def test_json_output_is_deterministic(capsys):
    args = ("global-zeta", "--builtin", "petersen", "--terms", "12", "--json")
    first = run(capsys, *args)[1]
    second = run(capsys, *args)[1]
    assert first == second
    assert json.loads(first)["dirichlet"][:6] == [1, 2, 2, 5, 2, 4]


def test_analyze_from_file(capsys, tmp_path):
    path = tmp_path / "k6.json"
    path.write_text(json.dumps(algebra_to_dict(complete_graph(6))))
    code, out, _ = run(capsys, "analyze", "--input", str(path), "--json")
    data = json.loads(out)
    assert code == 0 and data["relevant_primes"] == [2, 3] and data["order"] == 6


def test_bad_input_file_exits_one(capsys, tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{"tensor": [[[1]], [[0]]]}')
    code, _, err = run(capsys, "analyze", "--input", str(path))
    assert code == 1 and "tensor" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["local-zeta", "--builtin", "petersen", "--prime", "4"],
        ["count", "--builtin", "kn:2", "--prime", "2", "--kmax", "-1"],
        ["analyze"],
        ["analyze", "--builtin", "cube"],
        ["analyze", "--builtin", "kn:3", "--input", "x.json"],
        ["count", "--builtin", "kn:2", "--prime", "2", "--kmax", "3", "--threads", "0"],
        ["verify", "--input", "x.json"],
    ],
)
def test_domain_errors_exit_one(capsys, argv):
    assert run(capsys, *argv)[0] == 1


@pytest.mark.parametrize("argv", [["frobnicate"], ["count", "--builtin", "kn:2"], ["local-zeta", "--prime", "two"]])
def test_usage_errors_exit_one(argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 1


def test_budget_exceeded_exits_one(capsys):
    code, _, err = run(capsys, "count", "--builtin", "gq21", "--prime", "3", "--kmax", "8", "--budget", "10")
    assert code == 1 and "budget" in err.lower()


def test_verify_petersen_passes(capsys):
    code, out, _ = run(capsys, "verify", "--builtin", "petersen")
    assert code == 0 and out.count("PASS") == 3


def test_verify_square_reports_mismatch(capsys):
    code, out, _ = run(capsys, "verify", "--builtin", "square", "--json")
    data = json.loads(out)
    assert code == 2 and not data["ok"]
    assert data["checks"][0]["computed"] == [1, -2, 7, -4, 6, 4]


def test_genus_dump(capsys):
    code, out, _ = run(capsys, "genus", "--builtin", "kn:4", "--prime", "2", "--kmax", "5", "--dump-lattices", "--json")
    data = json.loads(out)
    assert code == 0 and len(data["classes"]) == 3
    assert all("conductor" in c for c in data["classes"])
    totals = [sum(c["series"][k] for c in data["classes"]) for k in range(6)]
    assert totals == [1, 1, 3, 3, 7, 11]


def test_threads_environment(capsys, monkeypatch):
    monkeypatch.setenv("ZETALG_THREADS", "2")
    assert run(capsys, "count", "--builtin", "kn:4", "--prime", "2", "--kmax", "5")[1].strip() == "1,1,3,3,7,11"
    monkeypatch.setenv("ZETALG_THREADS", "many")
    assert run(capsys, "count", "--builtin", "kn:4", "--prime", "2", "--kmax", "5")[0] == 1


def test_console_script():
    proc = subprocess.run(
        [sys.executable, "-m", "zetalg.cli", "local-zeta", "--builtin", "kn:9", "--prime", "3"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "[1, -1, 3, -3, 9]" in proc.stdout
