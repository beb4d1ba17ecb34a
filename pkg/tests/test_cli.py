import json
import subprocess
import sys

import pytest

from conftest import DATA
from hsim.cli import main

JW8 = str(DATA / "jw8.ham")
ISING = str(DATA / "ising3.ham")
TWO = str(DATA / "two_term.ham")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_order_json(capsys):
    code, out, _ = run(capsys, "order", "--strategy", "mctsp", "--input", JW8)
    d = json.loads(out)
    assert code == 0
    assert sorted(d["permutation"]) == list(range(8))
    assert d["clique_boundaries"] == [0] and d["cnot_cost"] == 36


@pytest.mark.parametrize("strategy,cost", [("lex", 40), ("mag", 40), ("deplete", 40)])
def test_order_costs(capsys, strategy, cost):
    _, out, _ = run(capsys, "order", "-s", strategy, "-i", JW8)
    assert json.loads(out)["cnot_cost"] == cost


def test_order_text(capsys):
    _, out, _ = run(capsys, "order", "-s", "lex", "-i", TWO, "--format", "text")
    assert out == "0.5 XXX\n0.25 ZXX\n"


def test_cover_and_sequence(capsys):
    _, out, _ = run(capsys, "cover", "-i", TWO)
    assert json.loads(out)["cliques"] == [[0], [1]]
    _, out, _ = run(capsys, "sequence", "-i", TWO)
    d = json.loads(out)
    assert d["permutation"] == [0, 1] and d["score"] == pytest.approx(0.125)


def test_tsp(capsys):
    _, out, _ = run(capsys, "tsp", "-i", JW8, "--clique", "0")
    d = json.loads(out)
    assert d["path_cost"] == 28 and d["cnot_cost"] == 36
    assert d["lexicographic_path_cost"] == 32 and d["lexicographic_cnot_cost"] == 40


def test_tsp_bad_clique(capsys):
    code, _, err = run(capsys, "tsp", "-i", JW8, "--clique", "3")
    assert code == 2 and "out of range" in err


def test_compile(capsys):
    _, out, _ = run(capsys, "compile", "-i", JW8, "--emit", "json")
    d = json.loads(out)
    assert d["cnot_count"] == 36 and d["uncancelled_cnot_count"] == 64 and d["step_cnot_cost"] == 36
    _, text, _ = run(capsys, "compile", "-i", JW8, "-s", "lex")
    assert sum(1 for line in text.splitlines() if line.startswith("cx ")) == 40
    _, text, _ = run(capsys, "compile", "-i", JW8, "-s", "lex", "--no-cancel")
    assert sum(1 for line in text.splitlines() if line.startswith("cx ")) == 64


def test_simulate(capsys):
    _, out, _ = run(capsys, "simulate", "-i", ISING, "--noise", "0")
    d = json.loads(out)
    assert d["hellinger_infidelity"] <= 1e-10
    assert sum(d["distribution"]) == pytest.approx(1)


def test_sweep_and_out_file(capsys, tmp_path):
    dest = tmp_path / "r.json"
    code, out, _ = run(capsys, "sweep", "-i", ISING, "-i", JW8, "--t-values", "0.5", "--timestamp", "T", "--out", str(dest))
    assert code == 0 and out == ""
    d = json.loads(dest.read_text())
    assert d["config"]["inputs"] == [ISING, JW8]
    assert len(d["sweep"]) == 2 * 5


def test_sweep_csv(capsys):
    _, out, _ = run(capsys, "sweep", "-i", ISING, "--t-values", "0.5,1", "--strategies", "lex,mctsp", "--format", "csv")
    assert len(out.strip().splitlines()) == 1 + 4


def test_sweep_warning_not_error(capsys):
    code, _, err = run(capsys, "sweep", "-i", ISING, "--t-values", "2", "--epsilon", "1e-9", "--r-max", "2", "--strategies", "lex")
    assert code == 0 and "warning" in err


def test_noise(capsys):
    code, out, _ = run(capsys, "noise", "-i", ISING, "--timestamp", "T")
    d = json.loads(out)
    assert code == 0 and len(d["noise"]) == 12
    assert [c["p"] for c in d["noise"][:4]] == [0.001, 0.005, 0.01, 0.02]


def test_input_error_exit_code(capsys, tmp_path):
    bad = tmp_path / "bad.ham"
    bad.write_text("0.5 XX\nnot a line\n")
    code, _, err = run(capsys, "order", "-i", str(bad))
    assert code == 2 and "line 2" in err
    code, _, _ = run(capsys, "order", "-i", str(tmp_path / "missing.ham"))
    assert code == 2
    code, _, _ = run(capsys, "order", "-i", JW8, "-i", ISING)
    assert code == 2


def test_capability_error_exit_code(capsys, tmp_path):
    big = tmp_path / "big.ham"
    big.write_text("1.0 ZZZZZZZ\n")
    code, _, _ = run(capsys, "simulate", "-i", str(big), "--noise", "0.01")
    assert code == 3
    code, out, _ = run(capsys, "noise", "-i", str(big), "--p-values", "0.01", "--strategies", "lex")
    assert code == 3 and json.loads(out)["noise"][0]["error"]


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as e:
        main(["order", "--strategy", "best", "-i", JW8])
    assert e.value.code == 1
    with pytest.raises(SystemExit) as e:
        main([])
    assert e.value.code == 1


def test_console_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "hsim.cli", "order", "-i", JW8, "-s", "lex"], capture_output=True, text=True
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["cnot_cost"] == 40
