import hashlib
import json
import subprocess
import sys

import pytest

from commkernel.cli import run
from commkernel.graphs import LabeledDigraph, flower


def invoke(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_help_and_version(capsys):
    assert run(["--help"]) == 0
    assert run(["--version"]) == 0
    assert run([]) == 2


def test_conjecture_report(capsys):
    code, out, _ = invoke(capsys, "conjecture", "--n", "3", "--k", "2", "--trials", "3")
    rep = json.loads(out)
    assert code == 0 and rep["schema_version"] == 1 and rep["command"] == "conjecture"
    assert rep["result"]["nullities"] == [2, 2, 2]
    assert rep["config"]["seed"] == 0 and rep["backend"] in ("cython", "python")


def test_reports_are_deterministic(capsys):
    args = ("conjecture", "--n", "3", "--k", "3", "--trials", "4", "--seed", "17")
    h = [hashlib.sha256(invoke(capsys, *args)[1].encode()).hexdigest() for _ in range(2)]
    assert h[0] == h[1]


def test_csv_output(capsys):
    code, out, _ = invoke(capsys, "conjecture", "--n", "2", "--k", "2", "--trials", "2",
                          "--out", "csv")
    assert code == 0
    assert out.splitlines() == ["trial,nullity,conjectured", "0,2,2", "1,2,2"]


def test_output_file(tmp_path, capsys):
    target = tmp_path / "r.json"
    assert run(["al-check", "--n", "2", "--m", "4", "--trials", "5", "--output", str(target)]) == 0
    assert json.loads(target.read_text())["result"]["vanished"] is True


def test_eulerian_sum(tmp_path, capsys):
    g = tmp_path / "flower.json"
    g.write_text(json.dumps(flower(3).to_json()))
    code, out, _ = invoke(capsys, "eulerian-sum", "--graph", str(g), "--start", "0")
    assert code == 0 and abs(json.loads(out)["result"]["signed_sum"]) == 6


def test_eulerian_sum_repeated_edge(tmp_path, capsys):
    G = LabeledDigraph.from_edges(2, {1: (0, 1), 2: (0, 1), 3: (1, 0), 4: (1, 0)})
    g = tmp_path / "repeated_edge.json"
    g.write_text(json.dumps(G.to_json()))
    code, out, _ = invoke(capsys, "eulerian-sum", "--graph", str(g), "--start", "0")
    assert code == 0 and json.loads(out)["result"]["signed_sum"] == 0


def test_block_and_ic(capsys):
    code, out, _ = invoke(capsys, "block", "--n", "3", "--r", "1", "--j", "1")
    assert code == 0 and len(json.loads(out)["result"]["display"]) == 3
    code, out, _ = invoke(capsys, "block", "--n", "3", "--r", "1", "--j", "1", "--method", "operator")
    assert code == 0
    code, out, _ = invoke(capsys, "ic", "--n", "3", "--r", "1", "--j", "1")
    res = json.loads(out)["result"]["ic"]["1"]
    assert res["matrix"] == [[-1, 0, 0], [0, 1, 0], [-1, 0, 0]] and res["nullity"] == 1


def test_maximal_graph(capsys):
    code, out, _ = invoke(capsys, "maximal-graph", "--n", "5", "--r", "2", "--a", "0", "--j", "0")
    rep = json.loads(out)
    assert code == 0 and rep["result"]["t"] == 2


def test_structure_report_exit_codes(capsys):
    code, out, _ = invoke(capsys, "structure-report", "--n", "5", "--r", "2")
    assert code == 0 and json.loads(out)["pass"] is True
    code, out, _ = invoke(capsys, "structure-report", "--n", "5", "--r", "2", "--inject-fault")
    rep = json.loads(out)
    assert code == 1 and rep["pass"] is False
    assert any(not c["pass"] for c in rep["result"]["checks"])


@pytest.mark.parametrize("argv", [
    ["conjecture", "--n", "3", "--k", "7"],
    ["conjecture", "--n", "3", "--k", "2", "--p", "12"],
    ["structure-report", "--n", "2", "--r", "2"],
    ["ic", "--n", "3", "--r", "1", "--j", "x"],
    ["al-check", "--n", "3", "--m", "4"],
    ["eulerian-sum", "--graph", "/nonexistent.json", "--start", "0"],
    ["conjecture", "--n", "three", "--k", "2"],
])
def test_usage_errors_exit_2(argv, capsys):
    assert run(argv) == 2


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "commkernel.cli", "al-check", "--n", "2",
                           "--m", "4", "--trials", "2"], capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["pass"] is True
