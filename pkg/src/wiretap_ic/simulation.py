"""Monte-Carlo campaigns over random Rayleigh channels.

Trial ``t`` always draws its channel from the substream keyed by
``(seed, t)``, so every cell and every scenario sees the same channel
sequence and comparisons between them are paired draw by draw.
"""
from __future__ import annotations

import csv
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .altruistic import solve_altruistic
from .benchmark import SingleUserInstance, secrecy_energy_efficiency, solve_single_user
from .egoistic import solve_egoistic
from .errors import QosInfeasible
from .model import ChannelInstance, PowerAllocation, PowerBudget
from .oracle import Scenario

CSV_HEADER = ("scenario", "gamma", "pmax1", "pmax2", "avg_secrecy", "avg_p1", "avg_p2", "avg_excess_sinr",
              "avg_energy_efficiency", "qos_infeasible_fraction", "trials_used")
SCENARIO_ORDER = (Scenario.ALTRUISTIC, Scenario.EGOISTIC, Scenario.SINGLE_USER)
AVERAGING_MODES = ("paired", "per-cell")


@dataclass(frozen=True)
class MonteCarloConfig:
    seed: int = 7
    trials: int = 5000
    pmax1_grid: Tuple[float, ...] = (1.0, 2.0, 4.0, 8.0)
    pmax2_grid: Tuple[float, ...] = (1.0, 2.0, 4.0, 8.0)
    gamma_list: Tuple[float, ...] = (1.0,)
    scenarios: Tuple[Scenario, ...] = SCENARIO_ORDER
    # "paired": every cell of a gamma averages the same trials (those QoS-feasible in all of its cells);
    # "per-cell": each cell averages its own feasible trials
    averaging: str = "paired"

    def __post_init__(self):
        if self.averaging not in AVERAGING_MODES:
            raise ValueError(f"averaging must be one of {AVERAGING_MODES}, got {self.averaging!r}")
        if int(self.trials) < 1:
            raise ValueError("trials must be at least 1")
        if not (0 <= int(self.seed) < 2**64):
            raise ValueError("seed must fit in an unsigned 64-bit integer")
        for name in ("pmax1_grid", "pmax2_grid", "gamma_list", "scenarios"):
            if len(getattr(self, name)) == 0:
                raise ValueError(f"{name} must not be empty")
        object.__setattr__(self, "pmax1_grid", tuple(float(x) for x in self.pmax1_grid))
        object.__setattr__(self, "pmax2_grid", tuple(float(x) for x in self.pmax2_grid))
        object.__setattr__(self, "gamma_list", tuple(float(x) for x in self.gamma_list))
        object.__setattr__(self, "scenarios", tuple(s if isinstance(s, Scenario) else Scenario.parse(s)
                                                    for s in self.scenarios))
        if any(x <= 0 for x in self.pmax1_grid + self.pmax2_grid) or any(g < 0 for g in self.gamma_list):
            raise ValueError("budgets must be positive and gammas nonnegative")

    def cells(self) -> List[Tuple[Scenario, float, float, float]]:
        scen = sorted(set(self.scenarios), key=SCENARIO_ORDER.index)
        return list(product(scen, self.gamma_list, self.pmax1_grid, self.pmax2_grid))


@dataclass
class SimulationRecord:
    scenario: str
    gamma: float
    pmax1: float
    pmax2: float
    avg_secrecy: float
    avg_p1: float
    avg_p2: float
    avg_excess_sinr: Optional[float]
    avg_energy_efficiency: float
    qos_infeasible_fraction: float
    trials_used: int

    def sort_key(self):
        return (self.scenario, self.gamma, self.pmax1, self.pmax2)


@dataclass
class CellResult:
    """Aggregated record plus the per-trial allocations (``None`` where QoS failed)."""

    record: SimulationRecord
    outcomes: List[Optional[PowerAllocation]] = field(default_factory=list)


def sample_channel(rng: np.random.Generator) -> ChannelInstance:
    """Six independent |CN(0, 1)|^2 power gains with unit noise."""
    z = rng.standard_normal(12) * math.sqrt(0.5)
    gains = z[0::2] ** 2 + z[1::2] ** 2
    return ChannelInstance(*gains.tolist(), noise=1.0)


def trial_channel(seed: int, trial: int) -> ChannelInstance:
    return sample_channel(np.random.default_rng([int(seed), int(trial)]))


def draw_channels(seed: int, trials: int) -> List[ChannelInstance]:
    return [trial_channel(seed, t) for t in range(trials)]


def solve_trial(ch: ChannelInstance, scenario: Scenario, gamma: float, budget: PowerBudget) -> PowerAllocation:
    """One draw under one scenario. Raises QosInfeasible for the two-user scenarios."""
    if scenario is Scenario.ALTRUISTIC:
        return solve_altruistic(ch, gamma, budget)
    if scenario is Scenario.EGOISTIC:
        return solve_egoistic(ch, gamma, budget)
    return solve_single_user(SingleUserInstance(ch.g11, ch.g1e, ch.noise, budget.pmax1))


def _mean(xs: Sequence[float]) -> float:
    # fsum is exact up to one rounding, so the result cannot depend on summation order
    return math.fsum(xs) / len(xs) if xs else math.nan


def solve_cell(channels: Sequence[ChannelInstance], scenario: Scenario, gamma: float, pmax1: float,
               pmax2: float) -> List[Optional[PowerAllocation]]:
    """Per-trial allocations of one cell, ``None`` where QoS cannot be met."""
    budget = PowerBudget(pmax1, pmax2)
    outcomes: List[Optional[PowerAllocation]] = []
    for ch in channels:
        try:
            outcomes.append(solve_trial(ch, scenario, gamma, budget))
        except QosInfeasible:
            outcomes.append(None)
    return outcomes


def aggregate(scenario: Scenario, gamma: float, pmax1: float, pmax2: float,
              outcomes: Sequence[Optional[PowerAllocation]], keep: Optional[Sequence[bool]] = None) -> SimulationRecord:
    """Average the feasible outcomes (optionally only those flagged in ``keep``)."""
    if keep is None:
        keep = [True] * len(outcomes)
    used = [a for a, k in zip(outcomes, keep) if k and a is not None]
    excess = _mean([a.qos_sinr - gamma for a in used]) if scenario is Scenario.ALTRUISTIC else None
    return SimulationRecord(
        scenario=scenario.value,
        gamma=float(gamma),
        pmax1=float(pmax1),
        pmax2=float(pmax2),
        avg_secrecy=_mean([a.secrecy for a in used]),
        avg_p1=_mean([a.p1 for a in used]),
        avg_p2=_mean([a.p2 for a in used]),
        avg_excess_sinr=excess,
        avg_energy_efficiency=_mean([secrecy_energy_efficiency(a.secrecy, a.p1) for a in used]),
        qos_infeasible_fraction=sum(a is None for a in outcomes) / len(outcomes),
        trials_used=len(used),
    )


def simulate_cell(channels: Sequence[ChannelInstance], scenario: Scenario, gamma: float, pmax1: float,
                  pmax2: float) -> CellResult:
    """One cell averaged over its own feasible trials."""
    outcomes = solve_cell(channels, scenario, gamma, pmax1, pmax2)
    return CellResult(aggregate(scenario, gamma, pmax1, pmax2, outcomes), outcomes)


def _cell_job(args):
    channels, cell = args
    return solve_cell(channels, *cell)


def paired_mask(cells, outcomes_per_cell, gamma: float) -> List[bool]:
    """Trials whose QoS is reachable in every cell that shares ``gamma``."""
    rows = [o for c, o in zip(cells, outcomes_per_cell) if c[1] == gamma and c[0] is not Scenario.SINGLE_USER]
    if not rows:
        return [True] * len(outcomes_per_cell[0])
    return [all(r[t] is not None for r in rows) for t in range(len(rows[0]))]


def run_cells(cfg: MonteCarloConfig, channels: Optional[Sequence[ChannelInstance]] = None,
              workers: int = 1) -> List[CellResult]:
    """Every cell of the campaign with per-trial outcomes, in ``cfg.cells()`` order."""
    if channels is None:
        channels = draw_channels(cfg.seed, cfg.trials)
    channels = list(channels)
    cells = cfg.cells()
    workers = max(1, int(workers))
    if workers == 1 or len(cells) == 1:
        outcomes = [solve_cell(channels, *cell) for cell in cells]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(_cell_job, [(channels, cell) for cell in cells]))
    masks = {}
    if cfg.averaging == "paired":
        masks = {g: paired_mask(cells, outcomes, g) for g in cfg.gamma_list}
    return [CellResult(aggregate(*cell, outs, masks.get(cell[1])), outs) for cell, outs in zip(cells, outcomes)]


def run_montecarlo(cfg: MonteCarloConfig, channels: Optional[Sequence[ChannelInstance]] = None,
                   workers: int = 1) -> List[SimulationRecord]:
    """Averaged records, sorted by (scenario, gamma, pmax1, pmax2).

    ``channels`` replaces the random draws (its length then sets the trial
    count); the sweep command uses this to pin a single channel.
    """
    return sorted((c.record for c in run_cells(cfg, channels, workers)), key=SimulationRecord.sort_key)


def _fmt(x: Optional[float]) -> str:
    if x is None:
        return ""
    if isinstance(x, int):
        return str(x)
    return format(float(x), ".17g")


def write_records(records: Iterable[SimulationRecord], destination) -> None:
    rows = sorted(records, key=SimulationRecord.sort_key)
    path = Path(destination)
    try:
        with path.open("w", encoding="utf-8", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(CSV_HEADER)
            for r in rows:
                w.writerow([r.scenario] + [_fmt(getattr(r, name)) for name in CSV_HEADER[1:]])
    except OSError as exc:
        raise OSError(f"cannot write records to {path}: {exc}") from exc


def read_records(source) -> List[SimulationRecord]:
    path = Path(source)
    with path.open(encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if tuple(reader.fieldnames or ()) != CSV_HEADER:
            raise ValueError(f"{path}: unexpected header {reader.fieldnames}")
        out = []
        for row in reader:
            out.append(SimulationRecord(
                scenario=row["scenario"],
                gamma=float(row["gamma"]),
                pmax1=float(row["pmax1"]),
                pmax2=float(row["pmax2"]),
                avg_secrecy=float(row["avg_secrecy"]),
                avg_p1=float(row["avg_p1"]),
                avg_p2=float(row["avg_p2"]),
                avg_excess_sinr=float(row["avg_excess_sinr"]) if row["avg_excess_sinr"] else None,
                avg_energy_efficiency=float(row["avg_energy_efficiency"]),
                qos_infeasible_fraction=float(row["qos_infeasible_fraction"]),
                trials_used=int(row["trials_used"]),
            ))
        return out
