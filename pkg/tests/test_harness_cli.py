import csv
import io
import json

import pytest

from cayleyfp.cli import main
from cayleyfp.errors import ParameterError, RefusalError
from cayleyfp.harness import ExperimentConfig, read_config_file, run_experiment
from cayleyfp.rng import split_seed


def csv_text(config):
    buf = io.StringIO()
    run_experiment(config, stream=buf)
    return buf.getvalue()


def test_fixed_set_replay():
    res = run_experiment(ExperimentConfig(n=5, trials=3, fixed_set=(0,), threads=1), stream=io.StringIO())
    assert [r.alpha for r in res.records] == [3, 3, 3]
    assert res.summary["schema"] == 1


def test_trial_seeds_and_order():
    text = csv_text(ExperimentConfig(n=101, trials=6, master_seed=7, threads=3))
    rows = list(csv.DictReader(io.StringIO(text)))
    assert [int(r["trial"]) for r in rows] == list(range(6))
    assert [int(r["seed"]) for r in rows] == [split_seed(7, i) for i in range(6)]
    assert all(r["micros"] == "0" for r in rows)


def test_composite_refused():
    with pytest.raises(RefusalError, match="witness"):
        ExperimentConfig(n=1001)


def test_config_validation():
    with pytest.raises(ParameterError):
        ExperimentConfig(n=101, trials=0)
    with pytest.raises(ParameterError):
        ExperimentConfig.from_mapping({"n": "101", "colour": "red"})


def test_config_file_and_env(tmp_path, monkeypatch):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# demo\nn = 101\np=0.5\ntrials = 2\n")
    values = read_config_file(cfg)
    monkeypatch.setenv("CAYLEYFP_SEED", "99")
    assert ExperimentConfig.from_mapping(values).master_seed == 99
    assert ExperimentConfig.from_mapping(values, {"master_seed": 3}).master_seed == 3
    assert ExperimentConfig.from_mapping({**values, "seed": "5"}).master_seed == 5
    assert ExperimentConfig.from_mapping(values, {"trials": 4}).trials == 4


def test_out_file_and_summary(tmp_path):
    out = tmp_path / "runs.csv"
    run_experiment(ExperimentConfig(n=61, trials=4, master_seed=1, out=str(out), threads=2))
    summary = json.loads((tmp_path / "runs.csv.json").read_text())
    assert summary["schema"] == 1 and summary["trials"] == 4
    assert summary["all_exact"] and summary["witnesses_verified"]
    assert out.read_text().splitlines()[0] == "trial,seed,set_size,alpha,nodes,micros,ratio"


def test_other_modes():
    text = csv_text(ExperimentConfig(n=1009, trials=3, mode="dimension", set_size=10, threads=1))
    assert text.splitlines()[0] == "trial,seed,set_size,dimension,doubling,holds"
    assert all(line.endswith(",1") for line in text.splitlines()[1:])
    text = csv_text(ExperimentConfig(n=1009, trials=2, mode="fingerprint", set_size=8, threads=1))
    assert len(text.splitlines()) == 3
    text = csv_text(ExperimentConfig(n=1009, mode="bounds", threads=1))
    assert "x3,24," in text


def run_cli(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_cli_examples(capsys):
    code, out, _ = run_cli(capsys, "alpha", "--n", "5", "--set", "0")
    assert code == 0 and "alpha=3" in out.splitlines()

    code, out, _ = run_cli(capsys, "bounds", "--n", "1009", "--p", "0.5", "--delta", "0.1", "--what", "x3")
    value = float(next(l for l in out.splitlines() if l.startswith("log_sum=")).split("=")[1])
    assert code == 0 and value == pytest.approx(2.53, abs=0.01)

    code, _, err = run_cli(capsys, "experiment", "--config", "missing.file")
    assert code == 2 and "usage" in err


def test_cli_exit_codes(capsys):
    assert run_cli(capsys, "alpha", "--n", "5", "--bogus")[0] == 2
    assert run_cli(capsys, "frobnicate")[0] == 2
    code, _, err = run_cli(capsys, "experiment", "--n", "1001", "--trials", "1")
    assert code == 1 and "witness 7" in err
    assert run_cli(capsys, "sample", "--n", "10", "--p", "1.5")[0] == 1


def test_cli_subcommands(capsys):
    code, out, _ = run_cli(capsys, "sample", "--n", "7", "--p", "0.5", "--seed", "42")
    assert code == 0 and out.startswith("size=")
    assert "independent=true" in run_cli(capsys, "independent", "--n", "5", "--set", "0", "--candidate", "0,1,2")[1]
    assert "dimension=2" in run_cli(capsys, "dimension", "--n", "101", "--set", "0,1,3", "--oracle")[1]
    code, out, _ = run_cli(capsys, "fingerprint", "--n", "1009", "--set", "0,1,3,7,12", "--a", "0.3")
    assert code == 0 and json.loads(out)["d"] == 4
    assert "elements=0,2,4,6,94,96,98" in run_cli(capsys, "gap", "--gap", "100;0;2;3")[1]
    assert "gap=100;0;1,2;4,8" in run_cli(capsys, "gap", "--gap", "100;0;1,2;3,5", "--normalize")[1]
    code, out, _ = run_cli(capsys, "experiment", "--n", "5", "--set", "0", "--trials", "2", "--threads", "1")
    assert code == 0 and out.splitlines()[1].split(",")[3] == "3"
