import json
import subprocess
import sys

from ftspread import __version__
from ftspread.cli import main, parse_p_grid
from ftspread.codes import build_steane


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_analyze_json_embeds_config(capsys):
    code, out, _ = run(["analyze", "--code", "steane", "--c-values", "1,2"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["version"] == __version__
    assert doc["config"]["argv"] == ["analyze", "--code", "steane", "--c-values", "1,2"]
    assert doc["result"]["distance"]["code_distance"] == 3
    assert doc["result"]["disjointness"]["delta_upper"] == "7/3"


def test_rerun_from_embedded_config_is_identical(capsys):
    _, first, _ = run(["mc", "--code", "steane", "--p-grid", "0.01,0.02", "--shots", "20000", "--seed", "3"], capsys)
    argv = json.loads(first)["config"]["argv"]
    _, second, _ = run(argv, capsys)
    assert first == second


def test_code_file(tmp_path, capsys):
    path = tmp_path / "code.json"
    path.write_text(build_steane().to_json())
    code, out, _ = run(["analyze", "--code-file", str(path), "--no-disjointness"], capsys)
    assert code == 0 and json.loads(out)["result"]["n"] == 7


def test_bad_code_file(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text('{"n": 2, "k": 0, "stabilisers": ["XI", "ZI"], "logical_x": [], "logical_z": [], "label": "x"}')
    code, _, err = run(["analyze", "--code-file", str(path)], capsys)
    assert code == 2 and err


def test_usage_errors_exit_two(capsys):
    assert run(["classify", "--family", "toric", "--sizes", "2,3"], capsys)[0] == 2
    assert run(["mc", "--code", "octagon"], capsys)[0] == 2
    assert run(["nonsense"], capsys)[0] == 2
    assert run(["spread"], capsys)[0] == 2


def test_failed_verification_exits_one(capsys):
    code, out, _ = run(["gadget", "switch-steane-rm", "--controls", "1,5,7"], capsys)
    assert code == 1
    assert json.loads(out)["result"]["passed"] is False


def test_gadget_passes(capsys):
    code, out, _ = run(["gadget", "teleport", "--u", "H", "--format", "table"], capsys)
    assert code == 0 and "passed" in out


def test_csv_mc(capsys, tmp_path):
    target = tmp_path / "scan.csv"
    code, out, _ = run(["mc", "--p-grid", "0.01:0.1:log:3", "--shots", "1000", "--format", "csv", "--out", str(target)], capsys)
    assert code == 0 and out == ""
    lines = target.read_text().splitlines()
    assert lines[0].startswith("# ftspread")
    assert lines[1] == "p,shots,failures,rate,ci_low,ci_high"
    assert len(lines) == 5


def test_spread_circuit_file(tmp_path, capsys):
    path = tmp_path / "c.txt"
    path.write_text("QUBITS 3\nH 1\nCNOT 1 2\nCNOT 2 3\n")
    code, out, _ = run(["spread", "--circuit", str(path)], capsys)
    res = json.loads(out)["result"]
    assert code == 0 and res["lightcone_bound"] == 3 and res["exact_spread"] == "3"


def test_threads_env(monkeypatch, capsys):
    monkeypatch.setenv("FTSPREAD_THREADS", "2")
    code, out, _ = run(["spread", "--channel", "cnot-ladder", "--n", "3"], capsys)
    assert json.loads(out)["config"]["options"]["threads"] == 2
    monkeypatch.setenv("FTSPREAD_THREADS", "many")
    assert run(["spread", "--channel", "cnot-ladder", "--n", "3"], capsys)[0] == 2


def test_classify_table(capsys):
    code, out, _ = run(["classify", "--family", "surface3d", "--sizes", "2,3,4", "--format", "table"], capsys)
    assert code == 0 and "|0>" in out


def test_conditional_ft_command(capsys):
    code, out, _ = run(["mc", "--conditional-ft", "--family", "alternating", "--levels", "2"], capsys)
    res = json.loads(out)["result"]
    assert code == 0
    assert res["conditional_ft"][0]["passed"] and not res["conditional_ft"][1]["passed"]


def test_p_grid_forms():
    assert parse_p_grid("0.1,0.2") == [0.1, 0.2]
    g = parse_p_grid("0.001:0.01:log")
    assert len(g) == 5 and abs(g[0] - 0.001) < 1e-15 and abs(g[-1] - 0.01) < 1e-15
    assert parse_p_grid("0:1:lin:3") == [0.0, 0.5, 1.0]


def test_console_script_entry_point():
    res = subprocess.run([sys.executable, "-m", "ftspread.cli", "--version"], capture_output=True, text=True)
    assert res.returncode == 0 and __version__ in res.stdout
