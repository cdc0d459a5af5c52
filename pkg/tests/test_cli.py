import json

import pytest

from edgeloc.cli import EXIT_BUDGET, EXIT_INPUT, EXIT_OK, EXIT_VERIFY, main


def _run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_solve_g6(capsys):
    code, out, _ = _run(capsys, "solve", "--g6", "Bw")
    data = json.loads(out)
    assert code == EXIT_OK and data["k"] == 3 and data["status"] == "optimal"  # K3


def test_solve_family_and_fixed_k(capsys):
    code, out, _ = _run(capsys, "solve", "--family", "cycle:6")
    assert code == EXIT_OK and json.loads(out)["k"] == 4
    code, out, _ = _run(capsys, "solve", "--family", "cycle:5", "--k", "3")
    assert code == EXIT_OK and json.loads(out)["status"] == "infeasible_at_k"


def test_solve_edge_list(tmp_path, capsys):
    f = tmp_path / "p4.txt"
    f.write_text("4 3\n0 1\n1 2\n2 3\n")
    code, out, _ = _run(capsys, "solve", "--edges", str(f))
    assert code == EXIT_OK and json.loads(out)["k"] == 3


def test_solve_budget_exit(capsys):
    code, out, _ = _run(capsys, "solve", "--family", "complete:6", "--budget-nodes", "20")
    assert code == EXIT_BUDGET and json.loads(out)["status"] == "budget_exhausted"


@pytest.mark.parametrize("argv", [
    ["solve", "--g6", "B w"],
    ["solve", "--g6", "C`"],  # disconnected
    ["solve", "--family", "wheel:0"],
    ["solve", "--family", "nonsense:3"],
    ["construct", "--family", "wheel:3"],
    ["construct", "--family", "monotonicity_G"],
    ["report", "--only", "no_such_group"],
    ["solve"],
])
def test_input_errors(capsys, argv):
    code, _, _ = _run(capsys, *argv)
    assert code == EXIT_INPUT


def test_construct_then_verify(tmp_path, capsys):
    code, out, _ = _run(capsys, "construct", "--family", "book:3", "--verify")
    assert code == EXIT_OK
    bundle = json.loads(out)
    assert bundle["claimed_k"] == 8 and bundle["report"]["passed"]
    path = tmp_path / "book.json"
    path.write_text(out)
    code, out, _ = _run(capsys, "verify", "--family", "book:3", "--coloring", str(path))
    assert code == EXIT_OK and json.loads(out)["passed"]


def test_construct_complete_prints_matrix(capsys):
    code, out, _ = _run(capsys, "construct", "--family", "complete:8")
    matrix = json.loads(out)["matrix"]
    assert matrix[0] == [None, 1, 3, 2, 4, 5, 6, 7]


def test_verify_failure(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"k": 2, "edges": [[0, 1, 1], [1, 2, 2], [2, 3, 1], [3, 4, 2]]}))
    code, out, _ = _run(capsys, "verify", "--family", "path:5", "--coloring", str(path))
    assert code == EXIT_VERIFY and not json.loads(out)["passed"]
    path.write_text(json.dumps({"k": 3, "edges": [[0, 1, 1], [1, 2, 3], [2, 3, 1], [3, 4, 3]]}))
    assert _run(capsys, "verify", "--family", "path:5", "--coloring", str(path))[0] == EXIT_INPUT
    assert _run(capsys, "verify", "--family", "path:5", "--coloring", str(path), "--normalize")[0] == EXIT_VERIFY
    assert _run(capsys, "verify", "--family", "path:5", "--coloring", str(tmp_path / "missing.json"))[0] == EXIT_INPUT


def test_report_single_graph(capsys):
    code, out, _ = _run(capsys, "report", "--family", "path:8")
    header, row = out.strip().splitlines()
    assert code == EXIT_OK and header.startswith("graph_id,") and "diameter" in row
    code, out, _ = _run(capsys, "report", "--family", "cycle:6", "--json")
    assert json.loads(out)["exact"] == 4


def test_report_suite_subset(capsys):
    code, out, err = _run(capsys, "report", "--only", "monotonicity")
    assert code == EXIT_OK
    assert out.splitlines()[0] == "case_id,theorem_tag,input,expected,got,status,millis"
    assert "PASS=" in err


def test_report_csv_is_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    argv = ["report", "--only", "paths", "--only", "cycles", "--n-max", "9"]
    assert _run(capsys, *argv, "--csv", str(a))[0] == EXIT_OK
    assert _run(capsys, *argv, "--csv", str(b), "--workers", "2")[0] == EXIT_OK
    assert a.read_bytes() == b.read_bytes()
    rows = a.read_text().splitlines()
    assert len(rows) > 5 and all(r.endswith(",") for r in rows[1:])  # millis blank


def test_report_json_summary(capsys):
    code, out, _ = _run(capsys, "report", "--only", "monotonicity", "--json")
    data = json.loads(out)
    assert data["summary"]["FAIL"] == 0 and len(data["rows"]) == 3
