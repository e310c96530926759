"""Command-line front end and CSV/JSON reports.

Subcommands::

    forcedrank run          one scenario (terminations and promotions rows)
    forcedrank sweep        --param team_size|shape|cutoff
    forcedrank bias-curve   --levels 0.0,0.1,...
    forcedrank oracle       exhaustive expectation on a tiny organization

Configuration files are flat ``key: value`` YAML mappings. Command-line flags
override file values.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

import yaml

from .errors import ConfigError, InvalidScenarioError, OracleCapacityError
from .harness import SIDES, ScenarioSummary, SweepTable, bias_curve, run_scenario, sweep
from .oracle import OracleReport, exhaustive_oracle, simulate_fixed_talents
from .org import BiasedAssignment, RandomAssignment, Scenario
from .talent import TalentShape

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_IO = 3
EXIT_CAPACITY = 4

COLUMNS = (
    "swept_param", "swept_value", "side", "labeled",
    "correct_mean", "correct_ci95", "fp_mean", "fp_ci95", "fn_mean", "fn_ci95",
    "error_rate_mean", "error_rate_ci95", "replications", "master_seed",
)
FORMATS = ("csv", "json")
POLICIES = ("random", "biased")
DEFAULT_SIGMA_TEAM = 0.7
DEFAULT_LEVELS = tuple(round(0.1 * i, 1) for i in range(11))
DEFAULT_SWEEPS: dict[str, tuple] = {
    "team_size": (5, 6, 7, 8, 9),
    "shape": tuple(TalentShape),
    "cutoff": (0.10, 0.15, 0.20),
}

CONFIG_KEYS = (
    "base_headcount", "team_size", "cutoff", "policy", "sigma_team", "shape",
    "replications", "master_seed", "output_path", "output_format",
)


@dataclass(frozen=True)
class RunConfig:
    scenario: Scenario = field(default_factory=Scenario)
    master_seed: int = 0
    output_path: str | None = None
    output_format: str = "csv"


def _load_mapping(text: str) -> dict[str, Any]:
    try:
        doc = yaml.safe_load(text)
    except yaml.MarkedYAMLError as exc:
        mark = exc.problem_mark or exc.context_mark
        where = f"line {mark.line + 1}, column {mark.column + 1}: " if mark else ""
        raise ConfigError(f"malformed config: {where}{exc.problem or exc}") from None
    except yaml.YAMLError as exc:
        raise ConfigError(f"malformed config: {exc}") from None
    if doc is None:
        return {}
    if not isinstance(doc, dict):
        raise ConfigError("config must be a flat key: value mapping")
    for key, value in doc.items():
        if key not in CONFIG_KEYS:
            raise ConfigError(f"unknown config field {key!r}; known fields: {', '.join(CONFIG_KEYS)}")
        if isinstance(value, (dict, list)):
            raise ConfigError(f"config field {key!r} must be a scalar")
    return doc


def _int_field(raw: dict, key: str, default: int) -> int:
    value = raw.get(key, default)
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{key} must be an integer, got {value!r}")
    return value


def _float_field(raw: dict, key: str, default: float) -> float:
    value = raw.get(key, default)
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{key} must be a number, got {value!r}")
    return float(value)


def build_run_config(raw: dict[str, Any]) -> RunConfig:
    """Validate a flat field mapping; omitted fields take the baseline defaults."""
    policy_name = raw.get("policy")
    has_sigma = raw.get("sigma_team") is not None
    if policy_name is None:
        policy_name = "biased" if has_sigma else "random"
    policy_name = str(policy_name).strip().lower()
    if policy_name not in POLICIES:
        raise ConfigError(f"policy must be one of {', '.join(POLICIES)}, got {raw.get('policy')!r}")
    if policy_name == "random" and has_sigma:
        raise ConfigError("sigma_team only applies to policy: biased")
    try:
        if policy_name == "biased":
            policy = BiasedAssignment(_float_field(raw, "sigma_team", DEFAULT_SIGMA_TEAM))
        else:
            policy = RandomAssignment()
        try:
            shape = TalentShape.parse(raw.get("shape", TalentShape.NORMAL))
        except ValueError as exc:
            raise ConfigError(f"shape: {exc}") from None
        scenario = Scenario(
            base_headcount=_int_field(raw, "base_headcount", 994),
            team_size=_int_field(raw, "team_size", 7),
            cutoff=_float_field(raw, "cutoff", 0.15),
            policy=policy,
            shape=shape,
            replications=_int_field(raw, "replications", 100),
        )
    except InvalidScenarioError as exc:
        raise ConfigError(str(exc)) from None

    seed = _int_field(raw, "master_seed", 0)
    if seed < 0:
        raise ConfigError(f"master_seed must be non-negative, got {seed}")
    fmt = str(raw.get("output_format", "csv")).lower()
    if fmt not in FORMATS:
        raise ConfigError(f"output_format must be csv or json, got {raw.get('output_format')!r}")
    out = raw.get("output_path")
    return RunConfig(scenario, seed, None if out is None else str(out), fmt)


def parse_config(text: str, overrides: dict[str, Any] | None = None) -> RunConfig:
    raw = _load_mapping(text)
    for key, value in (overrides or {}).items():
        if value is not None:
            raw[key] = value
    return build_run_config(raw)


def dump_config(config: RunConfig) -> str:
    """Serialize a RunConfig so that :func:`parse_config` reproduces it."""
    sc = config.scenario
    raw: dict[str, Any] = {
        "base_headcount": sc.base_headcount,
        "team_size": sc.team_size,
        "cutoff": sc.cutoff,
        "policy": sc.policy.name,
        "shape": sc.shape.value,
        "replications": sc.replications,
        "master_seed": config.master_seed,
        "output_format": config.output_format,
    }
    if isinstance(sc.policy, BiasedAssignment):
        raw["sigma_team"] = sc.policy.sigma_team
    if config.output_path is not None:
        raw["output_path"] = config.output_path
    return yaml.safe_dump(raw, sort_keys=False)


def _value(value: Any) -> Any:
    if isinstance(value, TalentShape):
        return value.value
    return value


def _summary_rows(summary: ScenarioSummary, param: str = "", swept: Any = "") -> list[dict]:
    rows = []
    for side in SIDES:
        s = summary.side(side)
        rows.append({
            "swept_param": param,
            "swept_value": _value(swept),
            "side": side,
            "labeled": s.labeled,
            "correct_mean": s.correct.mean,
            "correct_ci95": s.correct.ci95_half_width,
            "fp_mean": s.false_positive.mean,
            "fp_ci95": s.false_positive.ci95_half_width,
            "fn_mean": s.false_negative.mean,
            "fn_ci95": s.false_negative.ci95_half_width,
            "error_rate_mean": s.error_rate.mean,
            "error_rate_ci95": s.error_rate.ci95_half_width,
            "replications": summary.replications,
            "master_seed": summary.master_seed,
        })
    return rows


def _oracle_rows(report: OracleReport) -> list[dict]:
    rows = []
    for side in SIDES:
        s = report.side(side)
        rows.append({
            "swept_param": "method",
            "swept_value": "exact",
            "side": side,
            "labeled": s.labeled,
            "correct_mean": s.correct,
            "correct_ci95": 0.0,
            "fp_mean": s.false_positive,
            "fp_ci95": 0.0,
            "fn_mean": s.false_negative,
            "fn_ci95": 0.0,
            "error_rate_mean": s.error_rate,
            "error_rate_ci95": 0.0,
            "replications": report.partitions,
            "master_seed": "",
        })
    return rows


def report_rows(summary: ScenarioSummary | SweepTable | OracleReport) -> list[dict]:
    if isinstance(summary, SweepTable):
        return [row for value, s in summary.rows for row in _summary_rows(s, summary.param, value)]
    if isinstance(summary, OracleReport):
        return _oracle_rows(summary)
    return _summary_rows(summary)


def _csv_cell(value: Any) -> str:
    if isinstance(value, (float, Fraction)):
        return format(float(value), "#.6g")
    return str(value)


def emit_rows(rows: Sequence[dict], fmt: str) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(COLUMNS)
        for row in rows:
            writer.writerow([str(row[c]) if c == "swept_value" else _csv_cell(row[c]) for c in COLUMNS])
        return buf.getvalue()
    if fmt == "json":
        doc = [{c: float(row[c]) if isinstance(row[c], Fraction) else row[c] for c in COLUMNS} for row in rows]
        return json.dumps(doc, indent=2) + "\n"
    raise ConfigError(f"unknown output format {fmt!r}")


def emit_summary(summary: ScenarioSummary | SweepTable | OracleReport, fmt: str = "csv") -> str:
    """Render a summary, sweep table or oracle report as CSV or JSON text."""
    return emit_rows(report_rows(summary), fmt)


def _csv_list(text: str) -> list[str]:
    return [part.strip() for part in text.split(",") if part.strip()]


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="flat YAML config file")
    p.add_argument("--seed", type=int, help="master seed (all randomness derives from it)")
    p.add_argument("--reps", type=int, help="replications per scenario")
    p.add_argument("--policy", choices=POLICIES)
    p.add_argument("--sigma-team", type=float, help="team-mean sd for biased assignment")
    p.add_argument("--headcount", type=int, help="base headcount before fitting to teams")
    p.add_argument("--team-size", type=int)
    p.add_argument("--cutoff", type=float)
    p.add_argument("--shape", choices=[s.value for s in TalentShape])
    p.add_argument("--out", help="output file (default: stdout)")
    p.add_argument("--format", choices=FORMATS)
    p.add_argument("--workers", type=int, default=1, help="processes for replications (output is identical)")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="forcedrank", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run one scenario")
    _add_common(p)

    p = sub.add_parser("sweep", help="sweep team size, talent shape or cutoff")
    _add_common(p)
    p.add_argument("--param", required=True, choices=sorted(DEFAULT_SWEEPS))
    p.add_argument("--values", help="comma-separated values (default: the standard grid)")

    p = sub.add_parser("bias-curve", help="error rate against team clustering level")
    _add_common(p)
    p.add_argument("--levels", help="comma-separated sigma_team levels in [0, 1]")

    p = sub.add_parser("oracle", help="exact expectation by enumerating partitions")
    _add_common(p)
    p.add_argument("--talents", help="comma-separated distinct talents (default: 0..N-1)")
    return parser


def _overrides(args: argparse.Namespace) -> dict[str, Any]:
    return {
        "master_seed": args.seed,
        "replications": args.reps,
        "policy": args.policy,
        "sigma_team": args.sigma_team,
        "base_headcount": args.headcount,
        "team_size": args.team_size,
        "cutoff": args.cutoff,
        "shape": args.shape,
        "output_path": args.out,
        "output_format": args.format,
    }


def _read_config(path: str | None) -> str:
    if path is None:
        return ""
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror or exc}") from None


def _sweep_values(param: str, text: str | None) -> list:
    if text is None:
        return list(DEFAULT_SWEEPS[param])
    parts = _csv_list(text)
    try:
        if param == "team_size":
            return [int(v) for v in parts]
        if param == "cutoff":
            return [float(v) for v in parts]
        return [TalentShape.parse(v) for v in parts]
    except ValueError as exc:
        raise ConfigError(f"--values: {exc}") from None


def _execute(args: argparse.Namespace) -> tuple[str, RunConfig]:
    overrides = _overrides(args)
    if args.command == "bias-curve":
        # the curve varies sigma_team itself; the template just needs to be biased
        overrides["policy"] = "biased"
        overrides["sigma_team"] = None
    config = parse_config(_read_config(args.config), overrides)
    template, seed = config.scenario, config.master_seed

    try:
        if args.command == "run":
            result = run_scenario(template, seed, args.workers)
            return emit_summary(result, config.output_format), config
        if args.command == "sweep":
            values = _sweep_values(args.param, args.values)
            result = sweep(args.param, _checked_order(args.param, values), template, seed, args.workers)
            return emit_summary(result, config.output_format), config
        if args.command == "bias-curve":
            try:
                levels = [float(v) for v in _csv_list(args.levels)] if args.levels else list(DEFAULT_LEVELS)
            except ValueError as exc:
                raise ConfigError(f"--levels: {exc}") from None
            result = bias_curve(levels, template, seed, args.workers)
            return emit_summary(result, config.output_format), config
        return _run_oracle(args, config), config
    except InvalidScenarioError as exc:
        raise ConfigError(str(exc)) from None


def _checked_order(param: str, values: list) -> list:
    if param != "shape" and any(a >= b for a, b in zip(values, values[1:])):
        raise ConfigError(f"--values for {param} must be strictly increasing")
    return values


def _run_oracle(args: argparse.Namespace, config: RunConfig) -> str:
    sc = config.scenario
    if args.talents:
        try:
            talents = [float(v) for v in _csv_list(args.talents)]
        except ValueError as exc:
            raise ConfigError(f"--talents: {exc}") from None
    else:
        talents = [float(i) for i in range(sc.effective_headcount)]
    report = exhaustive_oracle(talents, sc.team_size, sc.cutoff)
    rows = report_rows(report)
    if args.reps is not None:
        mc = simulate_fixed_talents(talents, sc.team_size, sc.cutoff, sc.replications, config.master_seed)
        for row in _summary_rows(mc, "method", "monte_carlo"):
            rows.append(row)
    return emit_rows(rows, config.output_format)


def _write(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def main(argv: Sequence[str] | None = None) -> int:
    args = make_parser().parse_args(argv)
    try:
        text, config = _execute(args)
    except ConfigError as exc:
        print(f"forcedrank: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OracleCapacityError as exc:
        print(f"forcedrank: oracle: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    try:
        _write(text, config.output_path)
    except OSError as exc:
        print(f"forcedrank: cannot write {config.output_path}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
