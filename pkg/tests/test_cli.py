import json

import pytest

from dihedral_hsp.cli import ConfigError, _num, main, run, to_json


def payload(argv):
    report, status, _ = run(argv)
    report = dict(report)
    report.pop("duration_ms")
    return report, status


def json_text(argv, capsys):
    assert main(argv) == 0
    data = json.loads(capsys.readouterr().out)
    data.pop("duration_ms")
    return to_json(data)


def test_irreps():
    r, s = payload(["irreps", "--n", "4"])
    assert s == 0
    assert len(r["results"]["labels"]) == 5 and r["results"]["sum_dim_squared"] == 8
    r, _ = payload(["irreps", "--n", "1"])
    assert len(r["results"]["labels"]) == 2
    r, _ = payload(["irreps", "--n", "64"])
    assert r["results"]["two_dim_count"] == 31 and r["results"]["one_dim_count"] == 4


def test_qft_check():
    r, s = payload(["qft-check", "--n", "12", "--samples", "20"])
    assert s == 0 and r["results"]["fourier_index_count"] == 24


def test_hsp():
    r, s = payload(["hsp", "--n", "16", "--a", "3", "--samples", "100000"])
    assert s == 0
    assert r["results"]["max_two_dim_probability"] == pytest.approx(1 / 32, abs=1e-15)
    assert r["results"]["tv_distance"] < 0.02
    r, s = payload(["hsp", "--n", "16", "--a", "3", "--samples", "0"])
    assert s == 0 and "counts" not in r["results"]
    r, _ = payload(["hsp", "--n", "64", "--a", "10"])
    assert r["results"]["flatness_ratio"] <= 0.5


def test_eh():
    r, s = payload(["eh", "--n", "16", "--a", "5", "--m", "200", "--seed", "7"])
    assert s == 0 and r["results"]["success"] and r["results"]["candidates"] == [5, 11]
    r, _ = payload(["eh", "--n", "2", "--a", "1", "--m", "50"])
    assert r["results"]["candidates"] == [1]
    r, _ = payload(["eh", "--n", "16", "--a", "0", "--m", "200"])
    assert r["results"]["candidates"] == [0]


def test_eh_sweep():
    r, s = payload(["eh", "--n", "16", "--a", "5", "--sweep", "4,64", "--trials", "50"])
    assert s == 0
    assert [row["m"] for row in r["results"]["sweep"]] == [4, 64]


def test_clone():
    r, s = payload(["clone", "--n", "4", "--a", "1", "--trials", "2000"])
    assert s == 0
    assert r["results"]["clone_min_fidelity"] == pytest.approx(1.0, abs=1e-12)
    assert r["results"]["witness"]["left"] == 0.5 and r["results"]["witness"]["right_bound"] <= 0.25
    r, s = payload(["clone", "--n", "3", "--trials", "500"])
    assert s == 0


@pytest.mark.parametrize("argv", [
    ["irreps", "--n", "6"],
    ["qft-check", "--n", "6", "--samples", "10"],
    ["hsp", "--n", "8", "--samples", "1000"],
    ["eh", "--n", "12", "--sweep", "8,16", "--trials", "20"],
    ["clone", "--n", "5", "--trials", "300", "--threads", "2"],
])
def test_determinism(argv, capsys):
    assert json_text(argv + ["--seed", "3"], capsys) == json_text(argv + ["--seed", "3"], capsys)


def test_threads_do_not_change_results():
    a, _ = payload(["eh", "--n", "16", "--sweep", "8", "--trials", "40", "--threads", "1"])
    b, _ = payload(["eh", "--n", "16", "--sweep", "8", "--trials", "40", "--threads", "4"])
    assert a["results"] == b["results"]


def test_csv_output(tmp_path):
    out = tmp_path / "eh.csv"
    assert main(["eh", "--n", "4", "--a", "1", "--m", "10", "--format", "csv", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "k,b,probability,count" and len(lines) == 9
    out = tmp_path / "qft.csv"
    assert main(["qft-check", "--n", "3", "--format", "csv", "--out", str(out)]) == 0
    assert out.read_text().startswith("check,value,threshold,passed")


def test_json_report_shape(tmp_path):
    out = tmp_path / "r.json"
    assert main(["irreps", "--n", "5", "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert {"config", "version", "results", "checks", "duration_ms"} <= set(data)
    assert "rows" not in data
    assert data["config"]["n"] == 5


@pytest.mark.parametrize("argv", [
    ["irreps", "--n", "0"],
    ["irreps", "--n", "5000"],
    ["hsp", "--n", "4", "--a", "4"],
    ["eh", "--n", "4", "--m", "0"],
    ["clone", "--n", "2"],
    ["qft-check", "--n", "2000"],
    ["irreps", "--n", "4", "--threads", "0"],
])
def test_config_errors(argv, capsys):
    with pytest.raises(ConfigError):
        run(argv)
    assert main(argv) == 2
    assert "error" in capsys.readouterr().err


def test_failed_check_sets_exit_status(monkeypatch):
    from dihedral_hsp import cli
    monkeypatch.setitem(cli.COMMANDS, "irreps", lambda args: {
        "results": {}, "checks": {"x": cli.check(1.0, 0.0, False)}})
    assert main(["irreps", "--n", "3"]) == 1


def test_number_format():
    assert _num(0.1) == "0.10000000000000001"
    assert _num(1.0) == "1.0"
    assert _num(float("inf")) == "null"
    assert to_json({"x": [1, 2.5, None, True]}) == '{\n  "x": [1, 2.5, null, true]\n}'
