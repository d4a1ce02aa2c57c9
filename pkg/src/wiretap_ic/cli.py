"""Command-line front end.

Exit codes: 0 success, 1 usage or parse error, 2 QoS target unreachable,
3 verification failure.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from dataclasses import dataclass
from typing import Optional, Sequence

from .altruistic import secrecy_feasibility
from .case_tables import ADVISORY_TABLES
from .egoistic import egoistic_bounds
from .errors import InvalidInstance, ParseError, QosInfeasible
from .model import (
    DEFAULT_TOL,
    GAIN_NAMES,
    ChannelInstance,
    PowerAllocation,
    PowerBudget,
    QosRequirement,
    classify_sic_regime,
)
from .oracle import Scenario
from .simulation import MonteCarloConfig, run_montecarlo, write_records
from .verification import solve, verify

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_QOS = 2
EXIT_VERIFY = 3

SCENARIO_KEYS = GAIN_NAMES + ("noise", "pmax1", "pmax2", "beta", "gamma", "scenario")
CONFIG_KEYS = ("seed", "trials", "pmax1_grid", "pmax2_grid", "gamma_list", "scenarios", "averaging")


@dataclass(frozen=True)
class ScenarioFile:
    channel: ChannelInstance
    budget: PowerBudget
    qos: QosRequirement
    scenario: Scenario
    qos_key: str = "gamma"  # which of beta/gamma the file supplied, so a dump re-parses identically

    def to_dict(self) -> dict:
        d = self.channel.as_dict()
        d["pmax1"] = self.budget.pmax1
        d["pmax2"] = self.budget.pmax2
        d[self.qos_key] = getattr(self.qos, self.qos_key)
        d["scenario"] = self.scenario.value
        return d


def _number(data: dict, key: str) -> float:
    value = data[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ParseError(f"{key} must be a number, got {value!r}")
    return float(value)


def _load_json(text: str, what: str) -> dict:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{what} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ParseError(f"{what} must be a JSON object")
    return data


def parse_scenario(text: str) -> ScenarioFile:
    data = _load_json(text, "scenario file")
    unknown = sorted(set(data) - set(SCENARIO_KEYS))
    if unknown:
        raise ParseError(f"unknown keys: {', '.join(unknown)}")
    missing = [k for k in GAIN_NAMES + ("pmax1", "pmax2") if k not in data]
    if missing:
        raise ParseError(f"missing keys: {', '.join(missing)}")
    if ("beta" in data) == ("gamma" in data):
        raise ParseError("exactly one of beta and gamma must be given")
    qos_key = "beta" if "beta" in data else "gamma"
    try:
        channel = ChannelInstance(*(_number(data, k) for k in GAIN_NAMES),
                                  noise=_number(data, "noise") if "noise" in data else 1.0)
        budget = PowerBudget(_number(data, "pmax1"), _number(data, "pmax2"))
        value = _number(data, qos_key)
        qos = QosRequirement.from_beta(value) if qos_key == "beta" else QosRequirement.from_gamma(value)
        name = data.get("scenario", "altruistic")
        if not isinstance(name, str):
            raise ParseError(f"scenario must be a string, got {name!r}")
        scenario = Scenario.parse(name)
    except (InvalidInstance, ValueError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(str(exc)) from exc
    return ScenarioFile(channel, budget, qos, scenario, qos_key)


def read_scenario(path: str) -> ScenarioFile:
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_scenario(fh.read())
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc


def parse_config(text: str, seed: Optional[int] = None) -> MonteCarloConfig:
    data = _load_json(text, "campaign config")
    unknown = sorted(set(data) - set(CONFIG_KEYS))
    if unknown:
        raise ParseError(f"unknown keys: {', '.join(unknown)}")
    if seed is not None:
        data["seed"] = seed
    try:
        for key in ("pmax1_grid", "pmax2_grid", "gamma_list", "scenarios"):
            if key in data:
                if not isinstance(data[key], list):
                    raise ParseError(f"{key} must be a list")
                data[key] = tuple(data[key])
        for key in ("seed", "trials"):
            if key in data and (isinstance(data[key], bool) or not isinstance(data[key], int)):
                raise ParseError(f"{key} must be an integer")
        return MonteCarloConfig(**data)
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(str(exc)) from exc


def feasibility_label(sf: ScenarioFile) -> str:
    ch = sf.channel
    if sf.scenario is Scenario.EGOISTIC:
        return egoistic_bounds(ch, sf.qos.gamma, sf.budget).case.value
    if sf.scenario is Scenario.SINGLE_USER:
        return "positive" if ch.g11 > ch.g1e else "impossible"
    return secrecy_feasibility(ch).case.value


def allocation_record(sf: ScenarioFile, alloc: PowerAllocation) -> dict:
    return {
        "scenario": sf.scenario.value,
        "p1": alloc.p1,
        "p2": alloc.p2,
        "secrecy": alloc.secrecy,
        "qos_sinr": alloc.qos_sinr,
        "sic_blocked": alloc.sic_blocked,
        "sic_regime": classify_sic_regime(sf.channel).case.value,
        "feasibility": feasibility_label(sf),
        "branch": alloc.branch.value,
    }


def _floats(text: str) -> tuple:
    try:
        return tuple(float(x) for x in text.split(",") if x.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from exc


def _workers(threads: int) -> int:
    return (os.cpu_count() or 1) if threads == 0 else threads


def cmd_solve(args) -> int:
    sf = read_scenario(args.file)
    if args.dump_scenario:
        print(json.dumps(sf.to_dict(), sort_keys=True))
        return EXIT_OK
    alloc = solve(sf.channel, sf.qos.gamma, sf.budget, sf.scenario)
    rec = allocation_record(sf, alloc)
    for key in ("p1", "p2", "secrecy", "sic_regime", "feasibility", "branch"):
        value = rec[key]
        print(f"{key:<12}{value!r}" if isinstance(value, float) else f"{key:<12}{value}")
    print(json.dumps(rec, sort_keys=True))
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        scenario = Scenario.parse(args.scenario)
        budget = PowerBudget(args.pmax1, args.pmax2)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
    if scenario is Scenario.SINGLE_USER:
        raise ParseError("verify supports the altruistic and egoistic scenarios")
    if args.count < 0 or args.grid_n < 2 or args.gamma < 0:
        raise ParseError("count must be nonnegative, grid-n at least 2 and gamma nonnegative")
    rep = verify(args.count, args.seed if args.seed is not None else 1, args.grid_n, scenario, args.gamma,
                 budget, args.tol, args.paper_faithful)
    worst = rep.worst_gap if math.isfinite(rep.worst_gap) else 0.0
    print(f"scenario {scenario.value}: {rep.passed}/{rep.count} passed, {rep.failed} failed, "
          f"{rep.qos_infeasible} QoS-infeasible, worst gap {worst:.6g}")
    for f in rep.failures[:10]:
        print(f"  FAIL #{f.index}: {f.reason}; channel {f.channel.as_dict()}")
    if args.paper_faithful:
        for table in sorted({t for t, _ in rep.table_counts}):
            counts = {k: rep.table_counts[(table, k)] for k in ("match", "mismatch", "skipped")}
            tag = " (advisory)" if table in ADVISORY_TABLES else ""
            print(f"  table {table}{tag}: {counts['match']} match, {counts['mismatch']} mismatch, "
                  f"{counts['skipped']} skipped")
        for cc in rep.discrepancies[:10]:
            print(f"  discrepancy table {cc.table} row {cc.row}: table {cc.table_point:.12g} "
                  f"vs generic {cc.generic_point:.12g} (rel {cc.rel_diff:.3g})")
    return EXIT_OK if rep.ok else EXIT_VERIFY


def _write(records, output: str, started: float) -> int:
    try:
        write_records(records, output)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    print(f"{len(records)} cells written to {output} in {time.perf_counter() - started:.2f} s")
    return EXIT_OK


def cmd_montecarlo(args) -> int:
    started = time.perf_counter()
    try:
        with open(args.config, encoding="utf-8") as fh:
            cfg = parse_config(fh.read(), args.seed)
    except OSError as exc:
        raise ParseError(f"cannot read {args.config}: {exc}") from exc
    return _write(run_montecarlo(cfg, workers=_workers(args.threads)), args.output, started)


def cmd_sweep(args) -> int:
    started = time.perf_counter()
    sf = read_scenario(args.file)
    try:
        cfg = MonteCarloConfig(
            seed=args.seed if args.seed is not None else 7,
            trials=1,
            pmax1_grid=args.pmax1 or (sf.budget.pmax1,),
            pmax2_grid=args.pmax2 or (sf.budget.pmax2,),
            gamma_list=args.gamma or (sf.qos.gamma,),
            scenarios=tuple(args.scenarios.split(",")) if args.scenarios else (sf.scenario,),
            averaging="per-cell",
        )
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
    return _write(run_montecarlo(cfg, [sf.channel], workers=_workers(args.threads)), args.output, started)


def _global_flags(parser: argparse.ArgumentParser, suppress: bool) -> None:
    # subcommands repeat the flags with suppressed defaults so they do not clobber values given before the command
    def default(value):
        return argparse.SUPPRESS if suppress else value

    parser.add_argument("--seed", type=int, default=default(None), help="random seed override")
    parser.add_argument("--tol", type=float, default=default(DEFAULT_TOL), help="relative feasibility tolerance")
    parser.add_argument("--paper-faithful", action="store_true", default=default(False),
                        help="cross-check the case tables")
    parser.add_argument("--threads", type=int, default=default(1), help="worker processes, 0 = one per core")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, suppress=True)
    parser = argparse.ArgumentParser(prog="wiretap-ic", description=__doc__.splitlines()[0])
    _global_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", parents=[common], help="solve one scenario file")
    p.add_argument("file")
    p.add_argument("--dump-scenario", action="store_true", help="echo the parsed scenario as JSON and exit")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", parents=[common], help="compare closed-form solvers with the grid oracle")
    p.add_argument("--count", type=int, default=2000, help="number of random instances")
    p.add_argument("--grid-n", type=int, default=200, help="oracle grid points per axis")
    p.add_argument("--scenario", default="altruistic", help="altruistic or egoistic")
    p.add_argument("--gamma", type=float, default=1.0, help="QoS SINR target at D2")
    p.add_argument("--pmax1", type=float, default=2.0, help="power budget of T1")
    p.add_argument("--pmax2", type=float, default=2.0, help="power budget of T2")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("montecarlo", parents=[common], help="run a campaign from a JSON config")
    p.add_argument("config")
    p.add_argument("output")
    p.set_defaults(func=cmd_montecarlo)

    p = sub.add_parser("sweep", parents=[common], help="budget/QoS sweep on the channel of one scenario file")
    p.add_argument("file")
    p.add_argument("output")
    p.add_argument("--pmax1", type=_floats, default=None, help="comma-separated pmax1 values")
    p.add_argument("--pmax2", type=_floats, default=None, help="comma-separated pmax2 values")
    p.add_argument("--gamma", type=_floats, default=None, help="comma-separated gamma values")
    p.add_argument("--scenarios", default=None, help="comma-separated scenario names")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_PARSE
    if args.threads < 0:
        print("error: --threads must be nonnegative", file=sys.stderr)
        return EXIT_PARSE
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except QosInfeasible as exc:
        print(f"QoS infeasible: {exc}", file=sys.stderr)
        return EXIT_QOS


if __name__ == "__main__":
    sys.exit(main())
