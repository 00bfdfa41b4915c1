"""Batch front-end: scenario configs in, verification reports out.

Usage::

    posigroup verify --config run.json [--out report.json] [--format json|csv]
    posigroup list-scenarios

A config is a single JSON document::

    {"scenario": "jump", "params": {"n": 32, "seed": 7, "C": 2},
     "bound_override": [1.0, 0.0], "output_path": "out.json"}

Exit codes: 0 all conditions pass, 1 a condition failed, 2 usage or
config error, 3 numeric error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ConfigError, ScenarioNumericError, UnknownScenarioError
from .models import SCENARIOS, Grid1D, build_scenario, counterexample_pair
from .perturbation import (
    DEFAULT_TOL,
    ConditionReport,
    default_lambda_grid,
    minimal_c2,
    propagate_constants,
    verify_theorem_loop,
)
from .semigroup import default_t_grid

__all__ = [
    "ScenarioConfig",
    "RunReport",
    "load_config",
    "parse_config",
    "run_scenario",
    "report_to_dict",
    "report_from_dict",
    "emit_report",
    "main",
]

TOL_ENV = "POSIGROUP_TOL"

# name -> (default, validity predicate, description)
_PARAMS = {
    "n": (None, lambda x: x == int(x) and x >= 2, "integer >= 2"),
    "seed": (None, lambda x: x == int(x) and x >= 0, "integer >= 0"),
    "C": (None, lambda x: x >= 0, ">= 0"),
    "scale": (None, lambda x: x > 0, "> 0"),
    "t_max": (5.0, lambda x: x > 0, "> 0"),
    "t_step": (0.05, lambda x: x > 0, "> 0"),
    "lambda_max": (10.0, lambda x: x > 0, "> 0"),
    "lambda_step": (0.1, lambda x: x > 0, "> 0"),
    "tol": (DEFAULT_TOL, lambda x: x > 0, "> 0"),
}

# multiples of the base size reported for the counterexample
_GROWTH_FACTORS = (1, 2, 4, 8)


@dataclass(frozen=True)
class ScenarioConfig:
    scenario: str
    params: dict = field(default_factory=dict)
    bound_override: tuple | None = None
    output_path: str | None = None


@dataclass
class RunReport:
    scenario: str
    params: dict
    dim: int
    M: float
    omega: float
    minimal_c2: float
    constants: dict
    conditions: list
    no_uniform_c2: bool = False
    c2_growth: dict = field(default_factory=dict)
    wall_time_ms: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.conditions)


def _default_tol():
    raw = os.environ.get(TOL_ENV)
    if raw is None:
        return DEFAULT_TOL
    try:
        tol = float(raw)
    except ValueError:
        raise ConfigError(f"{TOL_ENV}={raw!r} is not a number") from None
    if not tol > 0:
        raise ConfigError(f"{TOL_ENV} must be > 0, got {tol}")
    return tol


def parse_config(obj) -> ScenarioConfig:
    """Validate a decoded config document and fill in defaults."""
    if not isinstance(obj, dict):
        raise ConfigError("config must be a JSON object")
    unknown = set(obj) - {"scenario", "params", "bound_override", "output_path"}
    if unknown:
        raise ConfigError(f"unknown top-level field(s): {sorted(unknown)}")
    name = obj.get("scenario")
    if not isinstance(name, str):
        raise ConfigError("field 'scenario' must be a string")
    if name not in SCENARIOS:
        raise UnknownScenarioError(f"unknown scenario {name!r}; choose from {sorted(SCENARIOS)}")

    raw = obj.get("params") or {}
    if not isinstance(raw, dict):
        raise ConfigError("field 'params' must be an object")
    params = {}
    for key, value in raw.items():
        if key not in _PARAMS:
            raise ConfigError(f"params.{key}: unknown parameter")
        if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
            raise ConfigError(f"params.{key}: expected a finite number, got {value!r}")
        _, ok, desc = _PARAMS[key]
        if not ok(value):
            raise ConfigError(f"params.{key}: must be {desc}, got {value!r}")
        params[key] = value

    for key, value in SCENARIOS[name].defaults.items():
        params.setdefault(key, value)
    for key, (default, _, _) in _PARAMS.items():
        if default is not None:
            params.setdefault(key, default)
    if "tol" not in raw:
        params["tol"] = _default_tol()
    if name == "counterexample" and params["n"] < 3:
        raise ConfigError("params.n: counterexample needs n >= 3")

    override = obj.get("bound_override")
    if override is not None:
        if isinstance(override, dict):
            override = [override.get("M"), override.get("omega")]
        if (not isinstance(override, (list, tuple)) or len(override) != 2
                or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in override)):
            raise ConfigError("bound_override must be [M, omega]")
        if override[0] < 1:
            raise ConfigError(f"bound_override: M must be >= 1, got {override[0]}")
        override = (float(override[0]), float(override[1]))

    out = obj.get("output_path")
    if out is not None and not isinstance(out, str):
        raise ConfigError("output_path must be a string")
    return ScenarioConfig(name, params, override, out)


def load_config(path) -> ScenarioConfig:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    return parse_config(obj)


def _grids(params, omega):
    t_grid = default_t_grid(params["t_max"], params["t_step"])
    count = int(round(params["lambda_max"] / params["lambda_step"]))
    return t_grid, default_lambda_grid(omega, params["lambda_step"], count)


def run_scenario(config: ScenarioConfig) -> RunReport:
    """Build the scenario's pair and run the b -> c -> a -> b loop.

    The counterexample has no uniform constant; its report lists the
    minimal constant for growing grid sizes instead of condition checks.
    """
    start = time.perf_counter()
    params = dict(config.params)
    try:
        pair = build_scenario(config.scenario, params, config.bound_override)
        c2 = minimal_c2(pair)
        consts = propagate_constants(max(c2, 0.0), "b", pair.M)
        growth = {}
        if config.scenario == "counterexample":
            conditions = []
            n = int(params["n"])
            growth = {str(n * k): minimal_c2(counterexample_pair(Grid1D(n * k)))
                      for k in _GROWTH_FACTORS}
        else:
            t_grid, lam_grid = _grids(params, pair.omega)
            conditions = verify_theorem_loop(pair, t_grid, lam_grid, params["tol"])
    except ArithmeticError as exc:
        raise ScenarioNumericError(config.scenario, exc) from exc

    return RunReport(
        scenario=config.scenario,
        params=params,
        dim=pair.space.n,
        M=pair.M,
        omega=pair.omega,
        minimal_c2=c2,
        constants={"C1": consts.C1, "C2": consts.C2, "C3": consts.C3},
        conditions=conditions,
        no_uniform_c2=config.scenario == "counterexample",
        c2_growth=growth,
        wall_time_ms=(time.perf_counter() - start) * 1e3,
    )


def report_to_dict(report: RunReport) -> dict:
    return {
        "scenario": report.scenario,
        "params": report.params,
        "dim": report.dim,
        "M": report.M,
        "omega": report.omega,
        "minimal_c2": report.minimal_c2,
        "constants": report.constants,
        "no_uniform_c2": report.no_uniform_c2,
        "c2_growth": report.c2_growth,
        "pass": report.passed,
        "conditions": [c.to_dict() for c in report.conditions],
        "wall_time_ms": report.wall_time_ms,
    }


def report_from_dict(d: dict) -> RunReport:
    return RunReport(
        scenario=d["scenario"],
        params=d["params"],
        dim=d["dim"],
        M=d["M"],
        omega=d["omega"],
        minimal_c2=d["minimal_c2"],
        constants=d["constants"],
        conditions=[ConditionReport.from_dict(c) for c in d["conditions"]],
        no_uniform_c2=d["no_uniform_c2"],
        c2_growth=d["c2_growth"],
        wall_time_ms=d["wall_time_ms"],
    )


def _csv_text(report: RunReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["scenario", "condition", "grid_value", "worst_slack", "pass"])
    for c in report.conditions:
        if not c.grid:
            w.writerow([report.scenario, c.condition, "", repr(c.worst_slack), c.passed])
            continue
        for g, s in zip(c.grid, c.slacks):
            w.writerow([report.scenario, c.condition, repr(g), repr(s), s <= c.tolerance])
    return buf.getvalue()


def format_report(report: RunReport, fmt: str = "json") -> str:
    if fmt == "json":
        return json.dumps(report_to_dict(report), indent=2) + "\n"
    if fmt == "csv":
        return _csv_text(report)
    raise ValueError(f"unknown format {fmt!r}")


def emit_report(report: RunReport, fmt: str, path) -> None:
    """Write ``report`` to ``path`` (``-`` for stdout)."""
    text = format_report(report, fmt)
    if str(path) == "-":
        sys.stdout.write(text)
        return
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise OSError(exc.errno, f"cannot write report: {exc.strerror}", str(path)) from None


def _build_parser():
    parser = argparse.ArgumentParser(prog="posigroup", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", help="run the verification pipeline on a scenario config")
    v.add_argument("--config", required=True, help="path to a JSON scenario config")
    v.add_argument("--out", help="report path; defaults to the config's output_path or stdout")
    v.add_argument("--format", choices=["json", "csv"], default="json")
    sub.add_parser("list-scenarios", help="print the registered scenarios")
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2

    if args.command == "list-scenarios":
        for name, sc in SCENARIOS.items():
            defaults = ", ".join(f"{k}={v}" for k, v in sc.defaults.items()) or "-"
            print(f"{name:15s} {sc.description} [{defaults}]")
        return 0

    try:
        config = load_config(args.config)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    try:
        report = run_scenario(config)
    except ScenarioNumericError as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2

    out = args.out or config.output_path or "-"
    try:
        emit_report(report, args.format, out)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
