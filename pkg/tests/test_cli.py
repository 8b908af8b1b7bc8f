import json
import subprocess
import sys

import numpy as np
import pytest

from stutterblocks import cli
from stutterblocks.binmat import gale_ryser_vectors

CFG = '{"d":1,"eta":2,"p":2,"kappa":[0,2]}'


def run(capsys, *argv):
    rc = cli.main(list(argv))
    out, err = capsys.readouterr()
    return rc, out, err


def test_core_from_params(capsys):
    assert run(capsys, "core", "from-params", "--e", "4", "--x", "2,-1,-1,0") == (0, "(5,2,2)\n", "")
    rc, out, _ = run(capsys, "core", "from-params", "--x", "[1,2,-3]", "--json")
    assert json.loads(out) == [5, 3, 3, 2, 2, 1, 1]


def test_alpha(capsys):
    assert run(capsys, "alpha", "--e", "4", "--kappa", "0,2", "--mp", "[[5,2,1],[1,1]]")[:2] == (0, "[3,2,3,2]\n")


def test_abacus_show(capsys):
    rc, out, _ = run(capsys, "abacus", "show", "--e", "5", "--partition", "[3,2,2,1]", "--window", "2")
    assert rc == 0 and out.splitlines() == ["0: oo|o.", "1: o.|..", "2: oo|o.", "3: o.|..", "4: oo|.."]


def test_abacus_json_round_trip(capsys):
    rc, out, _ = run(capsys, "abacus", "show", "--e", "3", "--partition", "[3,2,2,1]", "--json")
    data = json.loads(out)
    assert data == {"e": 3, "params": [1, -1, 0], "core": [1, 1], "n0": 1}
    rc, out, _ = run(capsys, "core", "from-params", "--e", str(data["e"]), "--x", json.dumps(data["params"]), "--json")
    assert json.loads(out) == data["core"]
    rc, out, _ = run(capsys, "core", "params", "--e", "3", "--partition", json.dumps(data["core"]))
    assert json.loads(out) == data["params"]


def test_core_of(capsys):
    assert run(capsys, "core", "of", "--e", "3", "--partition", "[3,2,2,1]")[1] == "(1,1) weight 2\n"
    rc, out, _ = run(capsys, "core", "of", "--e", "3", "--partition", "[3,2,2,1]", "--json")
    assert json.loads(out) == {"core": [1, 1], "weight": 2}


def test_shift_round_trip(capsys):
    cfg = '{"d":1,"eta":2,"p":2}'
    rc, out, _ = run(capsys, "shift", "--config", cfg, "--mp", "[[5,2,1],[1,1]]")
    assert json.loads(out) == [[1, 1], [5, 2, 1]]
    rc, back, _ = run(capsys, "shift", "--config", cfg, "--mp", out.strip())
    assert json.loads(back) == [[5, 2, 1], [1, 1]]
    assert run(capsys, "shift", "--config", cfg, "--alpha", "1,0,0,0")[1] == "[0,0,1,0]\n"


def test_stutter_find(capsys, tmp_path):
    mp = tmp_path / "mp.json"
    mp.write_text("[[5,2,1],[1,1]]")
    cfg = tmp_path / "config.json"
    cfg.write_text(CFG)
    rc, out, _ = run(capsys, "stutter", "find", "--config", str(cfg), "--multipartition", str(mp))
    witness, report = out.splitlines()
    assert rc == 0 and json.loads(witness) == [[3, 1, 1], [3, 1, 1]]
    assert json.loads(report) == {"alpha": [3, 2, 3, 2], "orbit_before": 2, "orbit_after": 1, "checks": "all-pass"}
    rc, out, _ = run(capsys, "stutter", "find", "--config", CFG, "--multipartition", "[[5,2,1],[1,1]]", "--json")
    data = json.loads(out)
    # the witness re-parses as an input multipartition
    rc, again, _ = run(capsys, "alpha", "--e", "4", "--kappa", "0,2", "--mp", json.dumps(data["witness"]))
    assert json.loads(again) == data["report"]["alpha"]


def test_stutter_modes(capsys):
    cfg = '{"d":1,"eta":1,"p":4,"kappa":[0,1,2,3]}'
    rc, out, _ = run(capsys, "stutter", "find", "--config", cfg, "--multipartition", "[[1],[],[1],[]]", "--power", "2")
    assert rc == 0 and json.loads(out.splitlines()[1])["orbit_after"] <= 2
    rc, out, _ = run(capsys, "stutter", "find", "--config", cfg, "--multipartition", "[[1],[],[1],[]]", "--minimal")
    assert rc == 0 and json.loads(out.splitlines()[1])["orbit_after"] == 2


def test_stutter_not_stable(capsys):
    rc, out, err = run(capsys, "stutter", "find", "--config", CFG, "--multipartition", "[[1],[]]")
    assert rc == 1 and out == ""
    assert err.strip() == "error[not-stable]: alpha not sigma-stable"


def test_stutter_needs_kappa(capsys):
    rc, _, err = run(capsys, "stutter", "find", "--config", '{"d":1,"eta":2,"p":2}', "--multipartition", "[[],[]]")
    assert rc == 1 and err.startswith("error[config]")


def test_binmat_rectify(capsys, tmp_path):
    W = [[1, 2, 2, 1, 2, 3, 0, 1], [0, 2, 1, 3, 1, 3, 2, 0]]
    E = np.stack([gale_ryser_vectors(w, 4) for w in W], axis=1).tolist()
    src = tmp_path / "in.json"
    src.write_text(json.dumps({"p": 4, "d": 2, "blockWidth": 4, "E": E}))
    dst = tmp_path / "out.json"
    assert run(capsys, "binmat", "rectify", "--input", str(src), "--output", str(dst))[0] == 0
    data = json.loads(dst.read_text())
    assert len(data["log"]) == 2
    S = np.array(data["E"]).reshape(4, 2, 2, 4).sum(axis=(1, 3))
    assert (S == 3).all()
    # the output is itself a valid, already rectified input
    rc, out, _ = run(capsys, "binmat", "rectify", "--input", str(dst))
    assert rc == 0 and json.loads(out)["log"] == [] and json.loads(out)["E"] == data["E"]


def test_binmat_rejects(capsys):
    rc, _, err = run(capsys, "binmat", "rectify", "--input", '{"p":2,"blockWidth":2,"E":[[[1,0]],[[1,1]]]}')
    assert rc == 1 and err.startswith("error[infeasible]")
    rc, _, err = run(capsys, "binmat", "rectify", "--input", '{"p":3,"blockWidth":2,"E":[[[1,0]],[[0,1]]]}')
    assert rc == 1 and err.startswith("error[domain]")


def test_oracle_verify(capsys, tmp_path):
    report = tmp_path / "r.json"
    rc, out, _ = run(capsys, "oracle", "verify", "--n", "4", "--config", CFG, "--report", str(report))
    assert rc == 0 and "0 failure(s)" in out
    data = json.loads(report.read_text())
    assert {"config", "blocks", "failures"} <= set(data) and data["failures"] == []
    assert data["config"]["kappa"] == [0, 2]
    rc, out, _ = run(capsys, "oracle", "verify", "--n", "3", "--config", '{"d":1,"eta":2,"p":2}')
    assert rc == 0 and "4 multicharge(s)" in out


def test_oracle_cap(capsys, monkeypatch):
    monkeypatch.setenv("STUTTER_CAP", "3")
    rc, _, err = run(capsys, "oracle", "verify", "--n", "3", "--config", CFG)
    assert rc == 1 and err.startswith("error[too-large]")


@pytest.mark.parametrize("argv,code", [
    (["frobnicate"], "usage"),
    (["core", "from-params", "--e", "4"], "usage"),
    (["core", "from-params", "--e", "4", "--x", "1,0,0,0"], "invalid-params"),
    (["core", "from-params", "--e", "4", "--x", "a,b"], "domain"),
    (["core", "params", "--e", "3", "--partition", "[3,2,2,1]"], "not-a-core"),
    (["alpha", "--e", "1", "--kappa", "0", "--mp", "[[1]]"], "invalid-modulus"),
    (["alpha", "--e", "4", "--kappa", "0,2", "--mp", "[[1,2],[]]"], "invalid-partition"),
    (["alpha", "--e", "4", "--kappa", "0,2", "--mp", "[[1"], "domain"),
    (["shift", "--config", '{"d":1}', "--mp", "[[]]"], "config"),
    (["stutter", "find", "--config", '{"d":1,"eta":2,"p":2,"kappa":[0,1]}', "--multipartition", "[[],[]]"],
     "incompatible-multicharge"),
])
def test_precondition_errors(capsys, argv, code):
    rc, out, err = run(capsys, *argv)
    assert rc == 1
    assert f"error[{code}]" in err


def test_internal_error_exit_code(capsys, monkeypatch):
    monkeypatch.setattr(cli, "find_stuttering", lambda lam, kappa, config: lam)
    rc, _, err = run(capsys, "stutter", "find", "--config", CFG, "--multipartition", "[[5,2,1],[1,1]]")
    assert rc == 2 and err.startswith("error[internal-invariant]")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "stutterblocks", "core", "from-params", "--e", "4", "--x", "2,-1,-1,0"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "(5,2,2)\n"
