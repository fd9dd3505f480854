import json
import subprocess
import sys

import pytest

from goodred.cli import main, parse_number


def run(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_good_d_small(tmp_path, capsys):
    p = tmp_path / "c.csv"
    code, out, _ = run(["good-d", "--max-d", "50", "--r-max", "100", "--out", str(p)], capsys)
    assert code == 0
    lines = p.read_text().splitlines()
    assert lines[1] == "d,r,t,scan_r_max"
    ds = {int(line.split(",")[0]) for line in lines[2:]}
    assert {37, -26} <= ds
    rep = json.loads(out)
    assert rep["header"]["flags"]["max_d"] == 50 and rep["incomplete"]


def test_good_d_empty(tmp_path, capsys):
    p = tmp_path / "e.csv"
    code, _, _ = run(["good-d", "--max-d", "0", "--out", str(p)], capsys)
    assert code == 0
    assert p.read_text().splitlines()[1:] == ["d,r,t,scan_r_max"]


def test_good_d_stdout_is_csv(capsys):
    code, out, err = run(["good-d", "--max-d", "50", "--r-max", "100"], capsys)
    assert code == 0 and out.splitlines()[1] == "d,r,t,scan_r_max"
    assert "assumption_holds" in err


def test_pipeline_and_byte_stability(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run(["--threads", "1", "good-d", "--max-d", "50000", "--out", str(a)], capsys)[0] == 0
    assert run(["--threads", "2", "good-d", "--max-d", "50000", "--out", str(b)], capsys)[0] == 0
    assert a.read_bytes() == b.read_bytes()
    code, out, _ = run(["setzer-count", "--x", "20000", "--census", str(a)], capsys)
    rep = json.loads(out)
    assert code == 0 and (rep["x"], rep["R"], rep["I"], rep["scan_r_max"]) == (20000, 728, 97, 1000000)
    code, out, _ = run(["setzer-count", "--x", "1", "--census", str(a)], capsys)
    assert (json.loads(out)["R"], json.loads(out)["I"]) == (0, 0)
    code, out, _ = run(["constants", "--census", str(a), "--which", "R"], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["lower"] >= 0.1255 and rep["total_upper"] <= 0.152
    code, out, _ = run(["constants", "--census", str(a), "--which", "I"], capsys)
    assert code == 0 and json.loads(out)["lower"] >= 0.01109
    out1 = run(["constants", "--census", str(a), "--which", "I"], capsys)[1]
    assert out1 == out


def test_constants_incomplete_exit(tmp_path, capsys):
    p = tmp_path / "small.csv"
    run(["good-d", "--max-d", "10000", "--out", str(p)], capsys)
    code, out, _ = run(["constants", "--census", str(p)], capsys)
    assert code == 2 and json.loads(out)["incomplete"]


def test_missing_census_exit(capsys):
    assert run(["constants", "--census", "/nonexistent.csv"], capsys)[0] == 2
    assert run(["setzer-count", "--x", "10"], capsys)[0] == 2


def test_kappa_cmd(capsys):
    code, out, _ = run(["kappa", "--p-max", "10000"], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["factor_2"] == 0.75 and len(rep["kappa"]) == 2


def test_lcm_cmd(capsys):
    code, out, _ = run(["lcm-exp", "--kappa", "0.333333333333", "--grid", "7,49,2401,1e7"], capsys)
    lines = [ln for ln in out.splitlines() if not ln.startswith("#")]
    assert code == 0 and lines[0] == "x,count,fitted_slope"
    assert len(lines) == 5
    code, out, _ = run(["lcm-exp", "--grid", "1e4,1e8", "--x-points", "20"], capsys)
    assert code == 0
    code, _, err = run(["lcm-exp", "--grid", "100,1000"], capsys)
    assert code == 2 and "quadratically" in err


def test_abc_cmd(capsys):
    code, out, _ = run(["abc-eps", "--k", "10^141"], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["epsilon"] >= 0.2 and not rep["nontrivial"]
    assert run(["abc-eps", "--k", "5"], capsys)[0] == 2


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# defaults\np-max = 1000\nk=10^200\n")
    code, out, _ = run(["--config", str(cfg), "kappa"], capsys)
    assert json.loads(out)["P"] == 1000
    code, out, _ = run(["--config", str(cfg), "kappa", "--p-max", "2000"], capsys)
    assert json.loads(out)["P"] == 2000
    code, out, _ = run(["--config", str(cfg), "abc-eps"], capsys)
    assert json.loads(out)["k"] == "10^200"
    bad = tmp_path / "bad.cfg"
    bad.write_text("no equals sign\n")
    assert run(["--config", str(bad), "kappa"], capsys)[0] == 2


def test_parse_number():
    assert parse_number("10^3") == 1000 and parse_number("1e4") == 1e4 and parse_number("12") == 12


def test_console_script_entry():
    res = subprocess.run([sys.executable, "-m", "goodred.cli", "abc-eps", "--k", "1e150"], capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["epsilon"] < 0.25
