import json
from pathlib import Path

import pytest
import yaml

import app
from utils import config_loader

ROOT = Path(app.__file__).resolve().parent


@pytest.fixture
def cli(tmp_path, monkeypatch):
    """Run app.main against a copy of config.yaml whose logs land in tmp_path."""
    config = yaml.safe_load((ROOT / "config.yaml").read_text(encoding="utf-8"))
    config["logging"]["log_file"] = str(tmp_path / "logs" / "cli.log")
    config["harness"]["output_dir"] = str(tmp_path / "results")
    path = tmp_path / "config.yaml"
    path.write_text(yaml.safe_dump(config), encoding="utf-8")
    monkeypatch.setenv("CONVERSE_FATOU_CONFIG", str(path))
    monkeypatch.setattr(config_loader, "_config_loader", None)
    monkeypatch.chdir(tmp_path)
    return app.main


def test_list(cli, capsys):
    assert cli(["list"]) == 0
    scenarios = json.loads(capsys.readouterr().out)
    assert scenarios[0]["id"] == "fatou_forward"

    assert cli(["list", "kernels"]) == 0
    kernels = json.loads(capsys.readouterr().out)
    assert "poisson" in [k["id"] for k in kernels]


def test_decay_check(cli, capsys):
    assert cli(["check", "decay", "--kernel", "poisson", "--n", "1"]) == 0
    assert json.loads(capsys.readouterr().out)["passed"]
    assert cli(["check", "decay", "--kernel", "K:0.5", "--n", "1"]) == 2


def test_eigen_check(cli, capsys):
    assert cli(["check", "eigen", "--n", "3"]) == 0
    result = json.loads(capsys.readouterr().out)
    assert result["max_residual"] <= 1e-5
    assert len(result["records"]) == app.EIGEN_POINTS


def test_mellin_spectrum(cli, capsys, tmp_path):
    code = cli(["mellin", "--kernel", "gaussian", "--n", "1", "--ymin", "-1", "--ymax", "1",
                "--points", "5", "--out", str(tmp_path / "spec")])
    assert code == 0
    assert (tmp_path / "spec" / "spectrum.csv").exists()
    assert json.loads(capsys.readouterr().out)["zeros"] == []


def test_unknown_kernel_is_a_config_error(cli):
    assert cli(["check", "decay", "--kernel", "nope", "--n", "1"]) == 4


def test_bad_output_dir(cli, tmp_path):
    (tmp_path / "blocker").write_text("x", encoding="utf-8")
    assert cli(["run", "fatou_forward", "--out", str(tmp_path / "blocker" / "out")]) == 3


def test_missing_config_file(tmp_path, monkeypatch):
    monkeypatch.setenv("CONVERSE_FATOU_CONFIG", str(tmp_path / "missing.yaml"))
    monkeypatch.setattr(config_loader, "_config_loader", None)
    assert app.main(["list"]) == 4


def test_run_with_json_config(cli, capsys, tmp_path):
    grid = {"start": 0.01, "ratio": 0.5, "count": 24, "direction": "zero"}
    document = tmp_path / "run.json"
    document.write_text(json.dumps({"grids": {"t": grid, "r": grid}}), encoding="utf-8")
    code = cli(["run", "fatou_forward", "--config", str(document), "--out", str(tmp_path / "res")])
    assert code == 0
    summary = json.loads(capsys.readouterr().out)
    assert summary["verdict"] == "consistent-with-theorem"


def test_mellin_threshold_comes_from_config(cli, capsys, tmp_path):
    path = tmp_path / "config.yaml"
    config = yaml.safe_load(path.read_text(encoding="utf-8"))
    config["mellin"]["zero_threshold"] = 10.0
    path.write_text(yaml.safe_dump(config), encoding="utf-8")
    code = cli(["mellin", "--kernel", "gaussian", "--n", "1", "--ymin", "-1", "--ymax", "1",
                "--points", "5", "--out", str(tmp_path / "spec")])
    assert code == 0
    zeros = json.loads(capsys.readouterr().out)["zeros"]
    assert len(zeros) == 2
    assert all(zero["modulus"] < 10.0 for zero in zeros)


def test_eigen_check_includes_symbolic_verification(cli, capsys):
    assert cli(["check", "eigen", "--n", "2", "--lambda", "0.5i"]) == 0
    result = json.loads(capsys.readouterr().out)
    assert result["passed"]
    assert result["symbolic"]["verification"]
    assert result["symbolic"]["matches_numeric"]


@pytest.mark.slow
def test_suite(cli, capsys, tmp_path):
    assert cli(["suite", "--out", str(tmp_path / "suite")]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 10
    for line in lines:
        scenario, rest = line.split(": ", 1)
        verdict, expected = rest[:-1].split(" (expected ")
        assert verdict == expected, scenario


def test_unknown_format_is_rejected_by_the_parser(cli):
    with pytest.raises(SystemExit) as excinfo:
        cli(["run", "fatou_forward", "--format", "xml"])
    assert excinfo.value.code == 2
