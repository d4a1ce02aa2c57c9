"""Joint power control when user 2 only holds its SINR exactly at gamma.

Pinning the SINR at D2 makes P2 an affine function of P1, so the secrecy
ratio becomes a bilinear ratio in P1 alone.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import List, Optional

from .altruistic import _classify_signs, check_qos_reachable, pick_best
from .errors import ZeroGainG22
from .fractional import BilinearRatioObjective, Interval, maximize_on_interval
from .model import Branch, ChannelInstance, PowerAllocation, PowerBudget, classify_sic_regime, make_allocation


class EgoisticCase(enum.Enum):
    ABOVE_BOUND = "37a"  # positive secrecy iff P1 > A'/B'
    ANY_POSITIVE = "37b"
    BELOW_BOUND = "37c"  # positive secrecy iff P1 < A'/B'
    IMPOSSIBLE = "impossible"

    @property
    def positive_possible(self) -> bool:
        return self is not EgoisticCase.IMPOSSIBLE


@dataclass(frozen=True)
class EgoisticBounds:
    case: EgoisticCase
    bound: Optional[float]
    a_p: float
    b_p: float
    lambda3: float  # may be negative when QoS is out of reach; +inf when P2 does not grow with P1

    def positive_range(self) -> Interval:
        """P1 values (before budget caps) where the SIC-blocked secrecy is nonnegative."""
        if self.case is EgoisticCase.IMPOSSIBLE:
            return Interval.empty()
        if self.case is EgoisticCase.ABOVE_BOUND:
            return Interval(self.bound, math.inf)
        if self.case is EgoisticCase.BELOW_BOUND:
            return Interval(0.0, self.bound)
        return Interval(0.0, math.inf)


def p2_equality(ch: ChannelInstance, p1: float, gamma: float) -> float:
    """Power user 2 needs so that the SINR at D2 is exactly ``gamma``."""
    if gamma == 0:
        return 0.0
    if ch.g22 == 0:
        raise ZeroGainG22("user 2 cannot reach its destination when g22 = 0")
    return gamma * (p1 * ch.g12 + ch.noise) / ch.g22


def lambda3(ch: ChannelInstance, gamma: float, pmax2: float) -> float:
    if gamma == 0 or ch.g12 == 0:
        return math.inf
    return (pmax2 * ch.g22 - gamma * ch.noise) / (gamma * ch.g12)


def egoistic_bounds(ch: ChannelInstance, gamma: float, budget: PowerBudget) -> EgoisticBounds:
    if gamma and ch.g22 == 0:
        raise ZeroGainG22("user 2 cannot reach its destination when g22 = 0")
    a = ch.g12
    b = ch.g11
    c = gamma * ch.g21 / ch.g22 if gamma else 0.0
    d = ch.g1e
    e = gamma * ch.g2e / ch.g22 if gamma else 0.0
    a_p = ((1 + c) * d - b * (1 + e)) * ch.noise
    b_p = a * (b * e - c * d)
    case, bound = _classify_signs(a_p, b_p, EgoisticCase)
    return EgoisticBounds(case, bound, a_p, b_p, lambda3(ch, gamma, budget.pmax2))


def curve_objective(ch: ChannelInstance, gamma: float, sic_blocked: bool) -> BilinearRatioObjective:
    """Secrecy ratio in P1 with P2 = kappa*P1 + mu on the QoS-equality curve."""
    kappa = gamma * ch.g12 / ch.g22 if gamma else 0.0
    mu = gamma * ch.noise / ch.g22 if gamma else 0.0
    s = ch.noise
    n1, n0 = kappa * ch.g21 + ch.g11, mu * ch.g21 + s
    d1, d0 = kappa * ch.g21, mu * ch.g21 + s
    if sic_blocked:
        return BilinearRatioObjective(n1, n0, kappa * ch.g2e, mu * ch.g2e + s, d1, d0,
                                      kappa * ch.g2e + ch.g1e, mu * ch.g2e + s)
    return BilinearRatioObjective(n1, n0, 0.0, s, d1, d0, ch.g1e, s)


def _curve_point(ch, gamma, p1, pmax2, sic_blocked, branch) -> PowerAllocation:
    p2 = min(p2_equality(ch, p1, gamma), pmax2)
    return make_allocation(ch, p1, p2, sic_blocked, branch)


def egoistic_candidates(ch: ChannelInstance, gamma: float, budget: PowerBudget) -> List[PowerAllocation]:
    """U1-off allocation followed by the optimum of each SIC region. Raises QosInfeasible."""
    check_qos_reachable(ch, gamma, budget)
    regime = classify_sic_regime(ch)
    cap = Interval(0.0, min(budget.pmax1, lambda3(ch, gamma, budget.pmax2)))
    out = [_curve_point(ch, gamma, 0.0, budget.pmax2, regime.blocks_closed(0.0), Branch.EGOISTIC_OFF)]

    blocked = regime.blocked_range(budget.pmax1)
    if blocked is not None:
        dom = blocked.intersect(cap).intersect(egoistic_bounds(ch, gamma, budget).positive_range())
        if not dom.is_empty:
            res = maximize_on_interval(curve_objective(ch, gamma, True), dom)
            out.append(_curve_point(ch, gamma, res.argmax, budget.pmax2, True, Branch.EGOISTIC_BLOCKED))
    open_range = regime.open_range(budget.pmax1)
    if open_range is not None:
        dom = open_range.intersect(cap)
        if not dom.is_empty:
            res = maximize_on_interval(curve_objective(ch, gamma, False), dom)
            out.append(_curve_point(ch, gamma, res.argmax, budget.pmax2, False, Branch.EGOISTIC_OPEN))
    return out


def solve_egoistic(ch: ChannelInstance, gamma: float, budget: PowerBudget) -> PowerAllocation:
    return pick_best(egoistic_candidates(ch, gamma, budget))
