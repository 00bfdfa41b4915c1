import csv
import json
import subprocess
import sys

import pytest

from posigroup.cli import (
    ScenarioConfig,
    emit_report,
    format_report,
    load_config,
    main,
    parse_config,
    report_from_dict,
    report_to_dict,
    run_scenario,
)
from posigroup.errors import ConfigError, ScenarioNumericError, UnknownScenarioError
from posigroup.perturbation import DEFAULT_TOL


def write(tmp_path, obj, name="cfg.json"):
    p = tmp_path / name
    p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return p


def strip_time(text):
    d = json.loads(text)
    d.pop("wall_time_ms")
    return json.dumps(d)


class TestLoadConfig:
    def test_defaults(self, tmp_path, monkeypatch):
        monkeypatch.delenv("POSIGROUP_TOL", raising=False)
        cfg = load_config(write(tmp_path, {"scenario": "canonical"}))
        assert cfg.scenario == "canonical"
        assert cfg.params == {"t_max": 5.0, "t_step": 0.05, "lambda_max": 10.0,
                              "lambda_step": 0.1, "tol": DEFAULT_TOL}
        assert cfg.bound_override is None

    def test_scenario_defaults_and_overrides(self, tmp_path):
        cfg = load_config(write(tmp_path, {"scenario": "counterexample", "params": {"n": 16}}))
        assert cfg.params["n"] == 16
        cfg = load_config(write(tmp_path, {"scenario": "jump"}))
        assert (cfg.params["n"], cfg.params["seed"], cfg.params["C"]) == (32, 7, 2.0)

    def test_unknown_scenario(self, tmp_path):
        with pytest.raises(UnknownScenarioError):
            load_config(write(tmp_path, {"scenario": "nope"}))

    def test_parse_error_reports_position(self, tmp_path):
        with pytest.raises(ConfigError, match=r":2:"):
            load_config(write(tmp_path, '{"scenario":\n "canonical",,}'))

    @pytest.mark.parametrize(
        "params",
        [{"n": 1}, {"n": 2.5}, {"tol": 0}, {"t_step": -0.1}, {"scale": 0}, {"C": -1},
         {"seed": -3}, {"bogus": 1}, {"n": "8"}, {"n": True}],
    )
    def test_out_of_range(self, params):
        with pytest.raises(ConfigError):
            parse_config({"scenario": "random", "params": params})

    def test_counterexample_needs_three_cells(self):
        with pytest.raises(ConfigError):
            parse_config({"scenario": "counterexample", "params": {"n": 2}})

    def test_bound_override(self):
        cfg = parse_config({"scenario": "canonical", "bound_override": [2, 1]})
        assert cfg.bound_override == (2.0, 1.0)
        cfg = parse_config({"scenario": "canonical", "bound_override": {"M": 2, "omega": 1}})
        assert cfg.bound_override == (2.0, 1.0)
        with pytest.raises(ConfigError):
            parse_config({"scenario": "canonical", "bound_override": [0.5, 1]})
        with pytest.raises(ConfigError):
            parse_config({"scenario": "canonical", "bound_override": [1]})

    def test_env_tolerance(self, monkeypatch):
        monkeypatch.setenv("POSIGROUP_TOL", "1e-6")
        assert parse_config({"scenario": "canonical"}).params["tol"] == 1e-6
        # an explicit parameter wins
        assert parse_config({"scenario": "canonical", "params": {"tol": 1e-3}}).params["tol"] == 1e-3
        monkeypatch.setenv("POSIGROUP_TOL", "-1")
        with pytest.raises(ConfigError):
            parse_config({"scenario": "canonical"})

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError):
            load_config(tmp_path / "missing.json")


class TestRunScenario:
    def test_canonical(self):
        report = run_scenario(parse_config({"scenario": "canonical"}))
        assert report.minimal_c2 == pytest.approx(0.5)
        assert [c.condition for c in report.conditions] == ["c", "a", "b"]
        assert report.passed
        assert report.constants == {"C1": 0.5, "C2": 0.5, "C3": 0.5}
        assert (report.dim, report.M, report.omega) == (2, 1.0, 0.5)

    def test_counterexample(self):
        report = run_scenario(parse_config({"scenario": "counterexample", "params": {"n": 8}}))
        assert report.minimal_c2 == pytest.approx(512.0)
        assert report.no_uniform_c2
        assert report.conditions == []
        assert report.c2_growth == {"8": 512.0, "16": 4096.0, "32": 32768.0, "64": 262144.0}

    def test_jump(self):
        cfg = parse_config({"scenario": "jump", "params": {"n": 32, "seed": 7, "C": 2}})
        report = run_scenario(cfg)
        assert report.passed
        assert report.minimal_c2 <= 2.0

    def test_override_with_M(self):
        report = run_scenario(parse_config({"scenario": "canonical", "bound_override": [2, 0.5]}))
        assert report.passed
        assert report.constants == {"C1": 8.0, "C2": 0.5, "C3": 2.0}

    def test_numeric_error_carries_scenario(self, monkeypatch):
        import posigroup.cli as cli

        def boom(*a, **k):
            raise ZeroDivisionError("boom")

        monkeypatch.setattr(cli, "verify_theorem_loop", boom)
        with pytest.raises(ScenarioNumericError, match="canonical"):
            run_scenario(parse_config({"scenario": "canonical"}))

    def test_deterministic(self):
        cfg = parse_config({"scenario": "random", "params": {"seed": 3}})
        a = format_report(run_scenario(cfg))
        b = format_report(run_scenario(cfg))
        assert strip_time(a) == strip_time(b)


class TestEmit:
    def test_json_round_trip(self, tmp_path):
        report = run_scenario(parse_config({"scenario": "canonical"}))
        emit_report(report, "json", tmp_path / "r.json")
        back = report_from_dict(json.loads((tmp_path / "r.json").read_text()))
        assert report_to_dict(back) == report_to_dict(report)

    def test_csv_rows(self, tmp_path):
        cfg = parse_config({"scenario": "canonical", "params": {"t_max": 1.0, "t_step": 0.25,
                                                                "lambda_max": 1.0, "lambda_step": 0.5}})
        report = run_scenario(cfg)
        emit_report(report, "csv", tmp_path / "r.csv")
        rows = list(csv.DictReader((tmp_path / "r.csv").open()))
        assert list(rows[0]) == ["scenario", "condition", "grid_value", "worst_slack", "pass"]
        assert len(rows) == sum(len(c.grid) for c in report.conditions) + 1 == 5 + 2 + 1
        b_rows = [r for r in rows if r["condition"] == "b"]
        assert len(b_rows) == 1 and b_rows[0]["grid_value"] == ""

    def test_unwritable(self, tmp_path):
        report = run_scenario(parse_config({"scenario": "canonical"}))
        with pytest.raises(OSError):
            emit_report(report, "json", tmp_path / "missing" / "r.json")


class TestMain:
    def test_exit_codes(self, tmp_path, capsys):
        ok = write(tmp_path, {"scenario": "canonical"}, "ok.json")
        out = tmp_path / "out.json"
        assert main(["verify", "--config", str(ok), "--out", str(out)]) == 0
        assert json.loads(out.read_text())["pass"] is True

        bad = write(tmp_path, {"scenario": "nope"}, "bad.json")
        assert main(["verify", "--config", str(bad)]) == 2
        assert main(["frobnicate"]) == 2
        assert main(["list-scenarios"]) == 0
        assert "counterexample" in capsys.readouterr().out

    def test_failing_condition_exits_1(self, tmp_path, monkeypatch):
        import posigroup.cli as cli
        from posigroup.perturbation import check_condition_b

        def failing(pair, t_grid, lam_grid, tol):
            return [check_condition_b(pair, -1.0, tol)]

        monkeypatch.setattr(cli, "verify_theorem_loop", failing)
        cfg = write(tmp_path, {"scenario": "canonical"})
        assert main(["verify", "--config", str(cfg), "--out", str(tmp_path / "o.json")]) == 1

    def test_numeric_error_exits_3(self, tmp_path, monkeypatch):
        import posigroup.cli as cli

        def boom(*a, **k):
            raise ArithmeticError("boom")

        monkeypatch.setattr(cli, "verify_theorem_loop", boom)
        cfg = write(tmp_path, {"scenario": "canonical"})
        assert main(["verify", "--config", str(cfg)]) == 3

    def test_output_path_from_config(self, tmp_path):
        target = tmp_path / "from_cfg.csv"
        cfg = write(tmp_path, {"scenario": "counterexample", "output_path": str(target)})
        assert main(["verify", "--config", str(cfg), "--format", "csv"]) == 0
        assert target.read_text().startswith("scenario,condition")

    def test_module_entry_point_is_byte_deterministic(self, tmp_path):
        cfg = write(tmp_path, {"scenario": "jump", "params": {"n": 8}})
        outs = []
        for k in range(2):
            out = tmp_path / f"r{k}.json"
            proc = subprocess.run([sys.executable, "-m", "posigroup", "verify", "--config", str(cfg),
                                   "--out", str(out)], capture_output=True, text=True)
            assert proc.returncode == 0, proc.stderr
            outs.append(strip_time(out.read_text()))
        assert outs[0] == outs[1]


def test_config_dataclass_is_frozen():
    cfg = ScenarioConfig("canonical")
    with pytest.raises(AttributeError):
        cfg.scenario = "jump"
