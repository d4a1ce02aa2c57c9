"""Brute-force ground truth for the closed-form solvers.

The altruistic oracle scans a uniform grid over the power rectangle, the
egoistic one scans the QoS-equality curve. Each grid point is scored with
the wiretap rate that actually applies there: SIC-blocked where the regime
blocks it, interference-free otherwise.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Dict

import numpy as np

from .benchmark import SingleUserInstance, single_user_secrecy
from .egoistic import lambda3, p2_equality
from .errors import QosInfeasible
from .model import (
    DEFAULT_TOL,
    Branch,
    ChannelInstance,
    PowerAllocation,
    PowerBudget,
    classify_sic_regime,
    clamped_secrecy_rate,
    make_allocation,
    qos_satisfied,
)


class Scenario(enum.Enum):
    ALTRUISTIC = "altruistic"
    EGOISTIC = "egoistic"
    SINGLE_USER = "single-user"

    @classmethod
    def parse(cls, text: str) -> "Scenario":
        key = text.strip().lower().replace("_", "-")
        for s in cls:
            if s.value == key or s.name.lower().replace("_", "-") == key:
                return s
        if key in ("singleuser", "single"):
            return cls.SINGLE_USER
        raise ValueError(f"unknown scenario {text!r}")


@dataclass(frozen=True)
class OracleConfig:
    grid_n: int = 200
    scenario: Scenario = Scenario.ALTRUISTIC

    def __post_init__(self):
        if int(self.grid_n) < 2:
            raise ValueError(f"grid_n must be at least 2, got {self.grid_n}")


@dataclass
class ComparisonReport:
    gap: float
    passed: bool
    feasible: bool
    slack: Dict[str, float] = field(default_factory=dict)


def _pick(values: np.ndarray) -> int:
    # np.argmax returns the first maximum: smallest p1, then smallest p2
    return int(np.argmax(values))


def grid_search(ch: ChannelInstance, gamma: float, budget: PowerBudget, cfg: OracleConfig = OracleConfig(),
                tol: float = DEFAULT_TOL) -> PowerAllocation:
    n = int(cfg.grid_n)
    if cfg.scenario is Scenario.SINGLE_USER:
        su = SingleUserInstance(ch.g11, ch.g1e, ch.noise, budget.pmax1)
        p = np.linspace(0.0, budget.pmax1, n * n)
        vals = np.maximum(0.0, np.log2((su.noise + p * su.g_ud) / (su.noise + p * su.g_ue)))
        best = float(p[_pick(vals)])
        return PowerAllocation(best, 0.0, single_user_secrecy(su, best), 0.0, False, Branch.SINGLE_USER)

    regime = classify_sic_regime(ch)
    if cfg.scenario is Scenario.ALTRUISTIC:
        p1, p2 = np.meshgrid(np.linspace(0.0, budget.pmax1, n), np.linspace(0.0, budget.pmax2, n), indexing="ij")
        p1, p2 = p1.ravel(), p2.ravel()
        ok = qos_satisfied(ch, p1, p2, gamma, tol)
        branch = Branch.HIGH
    else:
        if p2_equality(ch, 0.0, gamma) > budget.pmax2:
            raise QosInfeasible("bare QoS power exceeds pmax2")
        p1 = np.linspace(0.0, min(budget.pmax1, lambda3(ch, gamma, budget.pmax2)), n * n)
        p2 = np.minimum(p2_equality(ch, p1, gamma) + np.zeros_like(p1), budget.pmax2)
        ok = np.ones_like(p1, dtype=bool)
        branch = Branch.EGOISTIC_BLOCKED
    if not ok.any():
        raise QosInfeasible("no grid point satisfies the QoS constraint")

    blocked = regime.blocks_closed(p1)
    vals = np.where(ok, clamped_secrecy_rate(ch, p1, p2, blocked), -np.inf)
    i = _pick(vals)
    return make_allocation(ch, p1[i], p2[i], bool(blocked[i]), branch)


def eps_grid(ch: ChannelInstance, gamma: float, budget: PowerBudget, cfg: OracleConfig = OracleConfig()) -> float:
    """Discretisation allowance: gradient bound of the clamped secrecy times grid spacing."""
    n = int(cfg.grid_n)
    scale = 1.0 / (ch.noise * math.log(2.0))
    lip1 = (ch.g11 + ch.g1e) * scale
    lip2 = (ch.g21 + ch.g2e) * scale
    if cfg.scenario is Scenario.ALTRUISTIC:
        return lip1 * budget.pmax1 / (n - 1) + lip2 * budget.pmax2 / (n - 1)
    if cfg.scenario is Scenario.EGOISTIC:
        kappa = gamma * ch.g12 / ch.g22 if gamma and ch.g22 else 0.0
        span = min(budget.pmax1, lambda3(ch, gamma, budget.pmax2))
        return (lip1 + kappa * lip2) * max(span, 0.0) / (n * n - 1)
    return lip1 * budget.pmax1 / (n * n - 1)


def allocation_slack(alloc: PowerAllocation, ch: ChannelInstance, gamma: float, budget: PowerBudget,
                     scenario: Scenario) -> Dict[str, float]:
    """Signed constraint slacks, relative to each constraint's scale (negative = violated)."""
    slack = {
        "pmax1": (budget.pmax1 - alloc.p1) / budget.pmax1,
        "pmax2": (budget.pmax2 - alloc.p2) / budget.pmax2 if scenario is not Scenario.SINGLE_USER else 1.0,
        "p_nonneg": min(alloc.p1, alloc.p2),
    }
    if scenario is Scenario.SINGLE_USER:
        return slack
    sinr = alloc.p2 * ch.g22 / (alloc.p1 * ch.g12 + ch.noise)
    ref = max(gamma, 1.0)
    slack["qos"] = (sinr - gamma) / ref
    if scenario is Scenario.EGOISTIC:
        slack["qos_equality"] = -abs(sinr - gamma) / ref
    regime = classify_sic_regime(ch)
    if alloc.sic_blocked:
        # signed distance to the blocking half-line, relative to |A''| so omega itself passes
        slack["sic_claim"] = (alloc.p1 * regime.b_dd - regime.a_dd) / max(abs(regime.a_dd), ch.noise)
    expected = float(clamped_secrecy_rate(ch, alloc.p1, alloc.p2, alloc.sic_blocked))
    slack["secrecy_consistency"] = -abs(expected - alloc.secrecy)
    return slack


def compare(closed: PowerAllocation, oracle: PowerAllocation, eps: float, ch: ChannelInstance, gamma: float,
            budget: PowerBudget, scenario: Scenario = Scenario.ALTRUISTIC, tol: float = DEFAULT_TOL) -> ComparisonReport:
    slack = allocation_slack(closed, ch, gamma, budget, scenario)
    feasible = all(v >= -tol for v in slack.values())
    gap = closed.secrecy - oracle.secrecy
    return ComparisonReport(gap=gap, passed=feasible and gap >= -eps, feasible=feasible, slack=slack)
