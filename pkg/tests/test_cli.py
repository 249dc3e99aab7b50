"""Command-line front end: dispatch, determinism, round trips, exit codes."""

import json
import subprocess
import sys

from zetalab.cli import main, render_json


def run_cli(*argv):
    proc = subprocess.run([sys.executable, "-m", "zetalab", *argv],
                          capture_output=True, text=True, timeout=300)
    return proc.returncode, proc.stdout, proc.stderr


def test_eval_half_shift_value():
    code, out, _ = run_cli("eval", "--f", "1", "--q", "1",
                           "--alpha", "rat:1,2", "--s", "2,0")
    assert code == 0
    doc = json.loads(out)
    assert abs(doc["re"] - 4.934802200544679) < 1e-10
    assert abs(doc["im"]) < 1e-12


def test_eval_routes_agree():
    _, out1, _ = run_cli("eval", "--f", "1,-1", "--alpha", "rat:1,1",
                         "--s", "2.5,3", "--route", "lfunction")
    _, out2, _ = run_cli("eval", "--f", "1,-1", "--alpha", "rat:1,1",
                         "--s", "2.5,3", "--route", "decompose")
    a, b = json.loads(out1), json.loads(out2)
    assert abs(a["re"] - b["re"]) < 1e-10
    assert abs(a["im"] - b["im"]) < 1e-10


def test_eval_grid_csv(tmp_path):
    out_file = tmp_path / "grid.csv"
    code, _, _ = run_cli("--format", "csv", "--out", str(out_file),
                         "eval", "--f", "1", "--alpha", "rat:1,1",
                         "--grid", "1.5,2.5,3:0,10,4")
    assert code == 0
    lines = out_file.read_text().strip().splitlines()
    assert lines[0] == "sigma,t,re,im"
    assert len(lines) == 1 + 3 * 4
    for row in lines[1:]:
        sigma, t, re, im = (float(x) for x in row.split(","))
        assert 1.5 <= sigma <= 2.5 and 0 <= t <= 10


def test_annulus_radii():
    code, out, _ = run_cli("annulus", "radii", "--r", "1,2,5")
    assert code == 0
    assert json.loads(out) == {"R": 8, "T": 2}


def test_annulus_realize_round_trip():
    code, out, _ = run_cli("annulus", "realize", "--r", "1,2,5",
                           "--z", "0,2")
    assert code == 0
    doc = json.loads(out)
    assert doc["err"] <= 1e-9
    assert len(doc["angles"]) == 3


def test_kron_solve():
    code, out, _ = run_cli("kron", "solve", "--freqs", "0.1103,0.2,0.31",
                           "--targets", "0.25,0.5,0.75", "--delta", "0.05")
    assert code == 0
    doc = json.loads(out)
    assert doc["max_error"] < 0.05
    assert len(doc["x"]) == 3


def test_ideals_factor():
    code, out, _ = run_cli("ideals", "factor", "--alpha", "quad:0,1,2",
                           "--n", "3")
    assert code == 0
    doc = json.loads(out)
    assert doc["norm"] == "7"
    assert doc["factors"] == [["(7,4)", 1]]


def test_ideals_cassels_jsonl():
    code, out, _ = run_cli("--format", "jsonl", "ideals", "cassels",
                           "--alpha", "quad:0,1,2", "--N", "0", "--M", "5")
    assert code == 0
    rows = [json.loads(line) for line in out.strip().splitlines()]
    assert rows[-1]["type"] == "summary"
    assert rows[-1]["density"] == 0.6
    private = [r["n"] for r in rows[:-1] if r["private"]]
    assert private == [3, 4, 5]


def test_twist_sign_flip():
    code, out, _ = run_cli("twist", "sign-flip", "--alpha", "rat:1,1",
                           "--f", "1", "--delta", "1.0")
    assert code == 0
    doc = json.loads(out)
    assert doc["flip_index"] == 1
    assert abs(doc["sigma0"] - 1.47408988958) < 1e-6
    assert doc["residual"] <= 1e-10


def test_twist_greedy_jsonl():
    code, out, _ = run_cli("--format", "jsonl", "twist", "greedy",
                           "--alpha", "quad:0,1,2", "--f", "1",
                           "--n1", "1000", "--blocks", "3", "--no-hp")
    assert code == 0
    rows = [json.loads(line) for line in out.strip().splitlines()]
    assert rows[-1]["ok"] is True
    blocks = rows[:-1]
    assert len(blocks) == 3
    assert all(b["damping_ok"] for b in blocks)


def test_zeros_count():
    code, out, _ = run_cli("zeros", "count", "--f", "1", "--alpha",
                           "rat:1,1", "--rect", "1.1,2,0,30")
    assert code == 0
    assert json.loads(out)["count"] == 0


def test_zeros_pipeline_structured_failure():
    code, out, err = run_cli("zeros", "pipeline", "--alpha",
                             "dec:0.7853981634", "--delta", "0.5",
                             "--budget", "maxt=2000,maxiter=200000,ncut=6")
    doc = json.loads(out)
    if doc["success"]:
        assert code == 0
        assert doc["record"]["certificate"]["margin"] > 0
    else:
        assert code == 3
        assert doc["failed_stage"] is not None
        diag = json.loads(err)
        assert diag["failed_stage"] == doc["failed_stage"]


def test_bad_flag_exits_2():
    code, _, err = run_cli("eval", "--nonsense", "1")
    assert code == 2
    assert "usage" in err.lower()


def test_missing_subcommand_exits_2():
    code, _, _ = run_cli("kron")
    assert code == 2


def test_determinism_byte_identical():
    args = ("eval", "--f", "1,2,0.5", "--alpha", "quad:0,1,2", "--s", "1.7,9")
    _, out1, _ = run_cli(*args)
    _, out2, _ = run_cli(*args)
    assert out1 == out2


def test_config_document(tmp_path):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"alpha": "rat:1,2", "s": "2,0", "f": "1"}))
    code, out, _ = run_cli("--config", str(cfg), "eval", "--alpha", "rat:1,2")
    assert code == 0
    assert abs(json.loads(out)["re"] - 4.934802200544679) < 1e-10
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"no_such_key": 1}))
    code, _, err = run_cli("--config", str(bad), "eval", "--alpha", "rat:1,2")
    assert code == 2


def test_render_json_round_trip():
    doc = {"a": 1.5, "b": [1, 2.25, -0.0], "c": {"d": True, "e": None},
           "f": float("inf")}
    text = render_json(doc)
    back = json.loads(text)
    assert back["a"] == 1.5 and back["c"]["d"] is True
    assert back["f"] == float("inf")


def test_main_callable_directly(capsys):
    code = main(["annulus", "radii", "--r", "3,4"])
    assert code == 0
    assert json.loads(capsys.readouterr().out) == {"R": 7, "T": 1}
