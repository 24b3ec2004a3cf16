"""Command-line interface: subcommands, exit codes, and output determinism."""

import json

import pytest

from harvestlab.cli import main
from harvestlab.scenarios import preset, scenario_to_dict


@pytest.fixture()
def effort_config(tmp_path):
    doc = scenario_to_dict(preset("fig3")[1])
    doc["horizon"] = 2.0
    path = tmp_path / "scenario.json"
    path.write_text(json.dumps(doc))
    return path


@pytest.fixture()
def certifiable_config(tmp_path):
    doc = {
        "growth": {"r0": 1.0, "beta": 0.2, "gamma": 5.0},
        "forcing": {
            "r": {"baseline": 1.0, "amplitude": 0.0, "phase": 0.0, "period": 1.0},
            "k": {"baseline": 100.0, "amplitude": 0.045, "phase": 0.0, "period": 1.0},
        },
        "policy": {"mode": "effort", "segments": [{"start": 0.0, "end": 1.0, "rate": 0.5}],
                   "repeat": 1.0},
        "n0": 50.0,
        "horizon": 5.0,
        "label": "certifiable",
    }
    path = tmp_path / "certifiable.json"
    path.write_text(json.dumps(doc))
    return path


class TestEquilibriumCommand:
    def test_logistic_half_effort(self, capsys):
        code = main(["equilibrium", "--r", "1", "--beta", "0", "--gamma", "1",
                     "--effort", "0.5"])
        out = capsys.readouterr().out
        assert code == 0
        assert "x_ge = 0.5" in out

    def test_scientific_notation_accepted(self, capsys):
        code = main(["equilibrium", "--r", "1e0", "--beta", "0", "--gamma", "1",
                     "--effort", "5e-1"])
        assert code == 0
        assert "x_ge = 0.5" in capsys.readouterr().out

    def test_excess_effort_is_model_error(self, capsys):
        code = main(["equilibrium", "--r", "1", "--beta", "0", "--gamma", "1",
                     "--effort", "2"])
        assert code == 2
        assert "error" in capsys.readouterr().err


class TestMsyCommand:
    def test_symmetric_logistic(self, capsys):
        code = main(["msy", "--r", "1", "--beta", "0", "--gamma", "1"])
        out = capsys.readouterr().out
        assert code == 0
        assert "E_opt = 0.5" in out
        assert "Y_opt = 0.25" in out


class TestSimulateCommand:
    def test_writes_csv_and_metrics(self, tmp_path, effort_config, capsys):
        out = tmp_path / "run.csv"
        code = main(["simulate", "--config", str(effort_config), "--out", str(out),
                     "--step", "0.0025"])
        assert code == 0
        assert out.exists()
        assert (tmp_path / "run.csv.metrics.json").exists()
        assert len(out.read_text().strip().split("\n")) == 2 * 365 + 2

    def test_deterministic_output(self, tmp_path, effort_config):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        assert main(["simulate", "--config", str(effort_config), "--out", str(a),
                     "--step", "0.0025"]) == 0
        assert main(["simulate", "--config", str(effort_config), "--out", str(b),
                     "--step", "0.0025"]) == 0
        assert a.read_bytes() == b.read_bytes()
        assert (tmp_path / "a.csv.metrics.json").read_bytes() == \
               (tmp_path / "b.csv.metrics.json").read_bytes()

    def test_config_overrides_flags_with_warning(self, tmp_path, effort_config, capsys):
        out = tmp_path / "run.csv"
        code = main(["simulate", "--config", str(effort_config), "--out", str(out),
                     "--horizon", "9", "--step", "0.0025"])
        err = capsys.readouterr().err
        assert code == 0
        assert "precedence" in err
        assert len(out.read_text().strip().split("\n")) == 2 * 365 + 2  # config horizon

    def test_missing_config_is_io_error(self, tmp_path, capsys):
        code = main(["simulate", "--config", str(tmp_path / "nope.json"),
                     "--out", str(tmp_path / "x.csv")])
        assert code == 3

    def test_invalid_config_is_usage_error(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps({"growth": {}}))
        code = main(["simulate", "--config", str(bad), "--out", str(tmp_path / "x.csv")])
        assert code == 1
        assert not (tmp_path / "x.csv").exists()

    def test_unwritable_output_is_io_error(self, tmp_path, effort_config):
        code = main(["simulate", "--config", str(effort_config),
                     "--out", str(tmp_path / "missing-dir" / "x.csv"), "--step", "0.01"])
        assert code == 3


class TestPresetCommand:
    def test_fig4_writes_three_runs(self, tmp_path, monkeypatch, capsys):
        monkeypatch.setenv("HARVESTLAB_THREADS", "2")
        out_dir = tmp_path / "out"
        code = main(["preset", "--name", "fig4", "--out-dir", str(out_dir),
                     "--step", "0.01"])
        assert code == 0
        csvs = sorted(out_dir.glob("*.csv"))
        metrics = sorted(out_dir.glob("*.metrics.json"))
        assert len(csvs) == 3
        assert len(metrics) == 3

    def test_unknown_preset_is_usage_error(self, tmp_path):
        assert main(["preset", "--name", "fig9", "--out-dir", str(tmp_path)]) == 1


class TestPeriodicCommand:
    def test_certifiable_prints_certificate(self, certifiable_config, capsys):
        code = main(["periodic", "--config", str(certifiable_config),
                     "--step", "0.0025"])
        out = capsys.readouterr().out
        assert code == 0
        doc = json.loads(out)
        assert doc["residual"] < 1e-8
        assert doc["bracket"]["b0"] < doc["v0_star"] < 0.0

    def test_hypothesis_violation_exits_two(self, tmp_path, effort_config, capsys):
        code = main(["periodic", "--config", str(effort_config)])
        err = capsys.readouterr().err
        assert code == 2
        assert "positivity" in err
        assert "effective effort" in err


class TestCompareCommand:
    def test_ranked_table(self, tmp_path, capsys):
        paths = []
        for i, s in enumerate(preset("fig6-static")[:2]):
            doc = scenario_to_dict(s)
            doc["horizon"] = 26 / 12
            p = tmp_path / f"s{i}.json"
            p.write_text(json.dumps(doc))
            paths.append(str(p))
        code = main(["compare", "--config", *paths, "--step", "0.005"])
        out = capsys.readouterr().out
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0].startswith("label")
        assert len(lines) == 3

    def test_mismatch_exits_two(self, tmp_path):
        docs = [scenario_to_dict(preset("fig3")[0]), scenario_to_dict(preset("fig3")[1])]
        paths = []
        for i, doc in enumerate(docs):
            p = tmp_path / f"m{i}.json"
            p.write_text(json.dumps(doc))
            paths.append(str(p))
        assert main(["compare", "--config", *paths]) == 2


class TestUsageErrors:
    def test_unknown_subcommand(self, capsys):
        assert main(["frobnicate"]) == 1

    def test_missing_required_flag(self, capsys):
        assert main(["equilibrium", "--r", "1"]) == 1

    def test_no_arguments(self, capsys):
        assert main([]) == 1
