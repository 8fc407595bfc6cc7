import json

import pytest

from sparseptf.cli import main

TABLE2 = "[-1,-1,-1,-1,-1,-1,1,1,-1,1,-1,1,-1,1,1,-1]"


def test_solve_xor(capsys):
    assert main(["solve", "--alg", "l", "0110"]) == 0
    out = capsys.readouterr().out
    assert "monomials: 1" in out


def test_solve_json_and_out(tmp_path, capsys):
    path = tmp_path / "p.json"
    assert main(["solve", "--alg", "ga", "--seed", "3", "--json", "--out", str(path), "1000"]) == 0
    obj = json.loads(path.read_text())
    assert obj["n"] == 2 and obj["source"] == "ga"
    assert main(["verify", "1000", str(path)]) == 0


def test_density_and(capsys):
    assert main(["density", "1000"]) == 0
    assert "density: 3" in capsys.readouterr().out


def test_spectrum(capsys):
    assert main(["spectrum", "2:9"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[-1] == "3\tx1·x0\t1"


def test_table2_round_trip(tmp_path, capsys):
    assert main(["table2", "--out", str(tmp_path)]) == 0
    for name in ("3q", "l", "b", "ga"):
        assert main(["verify", TABLE2, str(tmp_path / f"table2_{name}.json")]) == 0


def test_verify_failure_exit_code(tmp_path, capsys):
    path = tmp_path / "p.json"
    path.write_text(json.dumps({"n": 2, "terms": [{"vars": [0], "coeff": "1"}], "source": ""}))
    assert main(["verify", "1001", str(path)]) == 1
    assert capsys.readouterr().err.startswith("error:")


@pytest.mark.parametrize("argv", [
    ["solve", "--alg", "sa", "01"],
    ["solve", "012"],
    ["sweep", "--n", "5", "--population", "all", "--out", "x"],
    ["verify", "01", "/nonexistent.json"],
    [],
])
def test_usage_errors(argv, capsys):
    assert main(argv) == 2
    assert capsys.readouterr().err.startswith("error:")


def test_calibrate_default(capsys):
    assert main(["calibrate"]) == 0
    assert capsys.readouterr().out.startswith("native")


def test_sweep_cli(tmp_path, capsys):
    assert main(["sweep", "--n", "2", "--alg", "brute,l,3q", "--population", "all",
                 "--out", str(tmp_path), "--format", "json"]) == 0
    obj = json.loads((tmp_path / "report.json").read_text())
    assert set(obj["algorithms"]) == {"brute", "l", "3q"}
