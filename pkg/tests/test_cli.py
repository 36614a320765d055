import json
import subprocess
import sys

import numpy as np
import pytest

from entanglib.cli import main
from entanglib.formats import write_json


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_states_list_and_emit(capsys, tmp_path):
    code, out, _ = run(["states", "list"], capsys)
    assert code == 0
    labels = [s["label"] for s in json.loads(out)]
    assert "w" in labels and "bell" in labels
    path = tmp_path / "w.json"
    assert main(["states", "emit", "w", "--out", str(path)]) == 0
    assert json.loads(path.read_text())["known_spectral"] == pytest.approx(2 / 3)


def test_norm_of_emitted_state(capsys, tmp_path):
    path = tmp_path / "w.json"
    main(["states", "emit", "w", "--out", str(path)])
    code, out, err = run(["norm", "--in", str(path), "--m", "9", "--net", "bloch"], capsys)
    assert code == 0
    est = json.loads(out)
    assert est["lower"] <= 2 / 3 + 1e-9 <= est["upper"] + 2e-9
    assert "spec" in err


def test_sep_check_density(capsys, tmp_path):
    path = tmp_path / "rho.json"
    M = np.eye(4) / 4
    write_json({"shape": [2, 2], "matrix": np.stack([M, 0 * M], axis=-1).tolist()}, str(path))
    code, out, _ = run(["sep-check", "--in", str(path), "--floor"], capsys)
    assert code == 0
    res = json.loads(out)
    assert res["status"] == "separable" and res["spec_floor"]["holds"]


def test_clique(capsys, tmp_path):
    path = tmp_path / "k3.json"
    write_json({"n": 3, "edges": [[0, 1], [1, 2], [0, 2]]}, str(path))
    code, out, _ = run(["clique", "--graph", str(path), "--kappa", "3"], capsys)
    assert code == 0
    assert json.loads(out)["motzkin_straus"]["contained"]


def test_bad_epsilon_is_rejected(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["norm", "--epsilon", "2"])
    assert exc.value.code == 2


def test_error_exit_codes(capsys, tmp_path):
    path = tmp_path / "w.json"
    main(["states", "emit", "w", "--out", str(path)])
    capsys.readouterr()
    code, out, err = run(["norm", "--in", str(path), "--budget", "10"], capsys)
    assert code == 2 and out == ""
    assert json.loads(err)["error"] == "budget"
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run(["norm", "--in", str(bad)], capsys)
    assert code == 1 and json.loads(err)["error"] == "validation"


def test_pipe_between_processes():
    emit = subprocess.run([sys.executable, "-m", "entanglib", "states", "emit", "t3"],
                          capture_output=True, text=True, check=True)
    res = subprocess.run([sys.executable, "-m", "entanglib", "gme", "--net", "bloch"], input=emit.stdout,
                         capture_output=True, text=True)
    assert res.returncode == 0, res.stderr
    lo, hi = json.loads(res.stdout)["gme"]
    target = np.sqrt(2 - np.sqrt(2))
    assert lo - 1e-9 <= target <= hi + 1e-9


def test_selftest_passes(capsys):
    code, out, err = run(["selftest"], capsys)
    assert code == 0 and json.loads(out)["passed"]
    assert err.count("PASS") == 8
