"""Joint power control when user 2 co-operates (SINR at D2 at least gamma).

For a fixed P2 the secrecy ratio is a Moebius function of P1, hence
monotone: user 1 either transmits at the largest admissible power or is
silent. The largest admissible P1 is either its cap (the *high* branch,
P2 above the QoS knee) or the QoS-tight value driven by P2 (the *low*
branch). Both reduce to a bilinear ratio in P2 solved exactly by
:func:`maximize_on_interval`.

Where the SIC regime leaves part of ``[0, pmax1]`` open to SIC, the same two
branches are solved there with the interference-free wiretap rate, and the
best of all candidates wins.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import List, Optional, Tuple

from .errors import InfeasibleP1, QosInfeasible
from .fractional import TIE_RTOL, BilinearRatioObjective, Interval, maximize_on_interval
from .model import (
    Branch,
    ChannelInstance,
    PowerAllocation,
    PowerBudget,
    SicCase,
    SicRegime,
    classify_sic_regime,
    make_allocation,
)


class FeasibilityCase(enum.Enum):
    ABOVE_BOUND = "20a"  # positive secrecy iff P2 > A/B
    ANY_POSITIVE = "20b"
    BELOW_BOUND = "20c"  # positive secrecy iff P2 < A/B
    IMPOSSIBLE = "impossible"

    @property
    def positive_possible(self) -> bool:
        return self is not FeasibilityCase.IMPOSSIBLE


@dataclass(frozen=True)
class SecrecyFeasibility:
    case: FeasibilityCase
    bound: Optional[float]
    a: float
    b: float

    def positive_at(self, p2) -> bool:
        """Whether the interference level ``p2`` admits positive secrecy (SIC blocked)."""
        return p2 * self.b > self.a


@dataclass(frozen=True)
class FeasibilityBounds:
    lambda1: float
    lambda2: float
    phi1: Optional[float]
    chi: float


def _classify_signs(a: float, b: float, enum_cls):
    # zero signs fall back to the primitive inequality x*b > a
    if a >= 0 and b <= 0:
        return enum_cls.IMPOSSIBLE, None
    if a <= 0 and b >= 0:
        return enum_cls.ANY_POSITIVE, None
    if a > 0:
        return enum_cls.ABOVE_BOUND, a / b
    return enum_cls.BELOW_BOUND, a / b


def secrecy_feasibility(ch: ChannelInstance) -> SecrecyFeasibility:
    a = ch.noise * (ch.g1e - ch.g11)
    b = ch.g11 * ch.g2e - ch.g21 * ch.g1e
    case, bound = _classify_signs(a, b, FeasibilityCase)
    return SecrecyFeasibility(case, bound, a, b)


def qos_power(ch: ChannelInstance, p1: float, gamma: float) -> float:
    """Smallest P2 meeting the SINR target when user 1 transmits at ``p1``."""
    if gamma == 0:
        return 0.0
    if ch.g22 == 0:
        return math.inf
    return gamma * (p1 * ch.g12 + ch.noise) / ch.g22


def qos_cap_p1(ch: ChannelInstance, p2: float, gamma: float) -> float:
    """Largest P1 that keeps the SINR at D2 at least ``gamma`` for a given P2."""
    if gamma == 0:
        return math.inf
    if ch.g12 == 0:
        return math.inf if p2 * ch.g22 >= gamma * ch.noise else -math.inf
    return (p2 * ch.g22 - gamma * ch.noise) / (gamma * ch.g12)


def check_qos_reachable(ch: ChannelInstance, gamma: float, budget: PowerBudget) -> float:
    lam2 = qos_power(ch, 0.0, gamma)
    if lam2 > budget.pmax2:
        raise QosInfeasible(f"bare QoS power {lam2:.6g} exceeds pmax2={budget.pmax2:.6g}")
    return lam2


def chi_for(regime: SicRegime, pmax1: float) -> float:
    if regime.case is SicCase.BLOCK_BELOW:
        return min(pmax1, regime.omega)
    return pmax1


def feasibility_bounds(ch: ChannelInstance, gamma: float, budget: PowerBudget, regime: SicRegime,
                       feas: SecrecyFeasibility) -> FeasibilityBounds:
    chi = chi_for(regime, budget.pmax1)
    return FeasibilityBounds(qos_power(ch, chi, gamma), qos_power(ch, 0.0, gamma), feas.bound, chi)


def optimal_p1_given_p2(ch: ChannelInstance, p2: float, gamma: float, pmax1: float, regime: SicRegime,
                        feas: SecrecyFeasibility) -> float:
    """User 1's best power for a fixed P2 under a blockable SIC regime."""
    if regime.case is SicCase.UNBLOCKABLE:
        raise ValueError("optimal_p1_given_p2 needs a blockable SIC regime")
    if not feas.positive_at(p2):
        return 0.0
    p1 = min(chi_for(regime, pmax1), qos_cap_p1(ch, p2, gamma))
    if regime.case is SicCase.BLOCK_ABOVE and p1 < regime.omega:
        raise InfeasibleP1(f"P1 cap {p1:.6g} is below the SIC floor omega={regime.omega:.6g}")
    return max(p1, 0.0)


def p2_feasibility_domains(ch: ChannelInstance, gamma: float, budget: PowerBudget, regime: SicRegime,
                           feas: SecrecyFeasibility) -> Tuple[Interval, Interval]:
    """P2 domains of the high (P1 = chi) and QoS-tight subproblems."""
    if regime.case is SicCase.UNBLOCKABLE:
        raise ValueError("p2_feasibility_domains needs a blockable SIC regime")
    fb = feasibility_bounds(ch, gamma, budget, regime, feas)
    lam1, lam2, phi1, pmax2 = fb.lambda1, fb.lambda2, fb.phi1, budget.pmax2
    case = feas.case
    if case is FeasibilityCase.IMPOSSIBLE:
        return Interval.empty(), Interval.empty()
    if case is FeasibilityCase.ABOVE_BOUND:
        d18 = Interval(max(lam1, phi1), pmax2)
        d19 = Interval(max(phi1, lam2), min(lam1, pmax2))
    elif case is FeasibilityCase.BELOW_BOUND:
        d18 = Interval(lam1, min(phi1, pmax2))
        d19 = Interval(lam2, min(phi1, lam1, pmax2))
    else:
        d18 = Interval(lam1, pmax2)
        d19 = Interval(lam2, min(lam1, pmax2))
    if gamma == 0 or ch.g12 == 0:
        # the QoS-tight curve degenerates to a single P2 with unbounded P1
        d19 = Interval.empty()
    return d18, d19


def path_objective(ch: ChannelInstance, a: float, b: float, c: float, sic_blocked: bool) -> BilinearRatioObjective:
    """Secrecy ratio in P2 along the path P1 = (a*P2 + b)/c."""
    g = ch
    n1, n0 = c * g.g21 + a * g.g11, c * g.noise + b * g.g11
    if sic_blocked:
        return BilinearRatioObjective(n1, n0, g.g2e, g.noise, g.g21, g.noise,
                                      c * g.g2e + a * g.g1e, c * g.noise + b * g.g1e)
    return BilinearRatioObjective(n1, n0, 0.0, g.noise, g.g21, g.noise, a * g.g1e, c * g.noise + b * g.g1e)


def _solve_high(ch, p1_fixed: float, domain: Interval, sic_blocked: bool, branch: Branch) -> Optional[PowerAllocation]:
    if domain.is_empty:
        return None
    res = maximize_on_interval(path_objective(ch, 0.0, p1_fixed, 1.0, sic_blocked), domain)
    return make_allocation(ch, p1_fixed, res.argmax, sic_blocked, branch)


def _solve_low(ch, gamma: float, p1_range: Interval, domain: Interval, sic_blocked: bool,
               branch: Branch) -> Optional[PowerAllocation]:
    if domain.is_empty or gamma == 0 or ch.g12 == 0:
        return None
    obj = path_objective(ch, ch.g22, -gamma * ch.noise, gamma * ch.g12, sic_blocked)
    res = maximize_on_interval(obj, domain)
    p1 = min(max(qos_cap_p1(ch, res.argmax, gamma), p1_range.lo), p1_range.hi)
    return make_allocation(ch, p1, res.argmax, sic_blocked, branch)


def solve_p2_high_branch(ch: ChannelInstance, gamma: float, budget: PowerBudget, regime: SicRegime,
                         feas: SecrecyFeasibility) -> Optional[PowerAllocation]:
    """P1 pinned at chi, P2 optimised over the high-branch domain."""
    if regime.blocked_range(budget.pmax1) is None:
        return None
    d18, _ = p2_feasibility_domains(ch, gamma, budget, regime, feas)
    return _solve_high(ch, chi_for(regime, budget.pmax1), d18, True, Branch.HIGH)


def low_branch_domain(ch: ChannelInstance, gamma: float, budget: PowerBudget, regime: SicRegime,
                      feas: SecrecyFeasibility) -> Interval:
    """QoS-tight domain, shrunk so the induced P1 respects the SIC floor."""
    _, d19 = p2_feasibility_domains(ch, gamma, budget, regime, feas)
    if regime.case is SicCase.BLOCK_ABOVE and not d19.is_empty:
        d19 = Interval(max(d19.lo, qos_power(ch, regime.omega, gamma)), d19.hi)
    return d19


def solve_p2_low_branch(ch: ChannelInstance, gamma: float, budget: PowerBudget, regime: SicRegime,
                        feas: SecrecyFeasibility) -> Optional[PowerAllocation]:
    """P1 on the QoS-tight curve, P2 optimised over the low-branch domain."""
    p1_range = regime.blocked_range(budget.pmax1)
    if p1_range is None:
        return None
    domain = low_branch_domain(ch, gamma, budget, regime, feas)
    return _solve_low(ch, gamma, p1_range, domain, True, Branch.LOW)


def _open_domains(ch, gamma: float, budget: PowerBudget, p1_range: Interval) -> Tuple[Interval, Interval]:
    high = Interval(qos_power(ch, p1_range.hi, gamma), budget.pmax2)
    low = Interval(qos_power(ch, p1_range.lo, gamma), min(qos_power(ch, p1_range.hi, gamma), budget.pmax2))
    return high, low


def solve_open_region(ch: ChannelInstance, gamma: float, budget: PowerBudget,
                      p1_range: Interval) -> List[PowerAllocation]:
    """Both branches over a P1 range where the eavesdropper can cancel user 2."""
    high_dom, low_dom = _open_domains(ch, gamma, budget, p1_range)
    out = [
        _solve_high(ch, p1_range.hi, high_dom, False, Branch.OPEN_HIGH),
        _solve_low(ch, gamma, p1_range, low_dom, False, Branch.OPEN_LOW),
    ]
    return [a for a in out if a is not None]


def qos_only_allocation(ch: ChannelInstance, gamma: float, budget: PowerBudget) -> PowerAllocation:
    lam2 = check_qos_reachable(ch, gamma, budget)
    return make_allocation(ch, 0.0, lam2, classify_sic_regime(ch).blocks_closed(0.0), Branch.QOS_ONLY)


def better(a: PowerAllocation, b: PowerAllocation) -> bool:
    """True if ``a`` beats ``b``: higher secrecy, then lower total power."""
    margin = TIE_RTOL * max(abs(a.secrecy), abs(b.secrecy))
    if a.secrecy > b.secrecy + margin:
        return True
    if b.secrecy > a.secrecy + margin:
        return False
    return a.total_power < b.total_power


def pick_best(candidates) -> PowerAllocation:
    best = None
    for cand in candidates:
        if cand is not None and (best is None or better(cand, best)):
            best = cand
    return best


def solve_unblockable(ch: ChannelInstance, gamma: float, budget: PowerBudget) -> PowerAllocation:
    """Eavesdropper always runs SIC; user 1 faces the interference-free wiretap rate."""
    base = qos_only_allocation(ch, gamma, budget)
    return pick_best([base, *solve_open_region(ch, gamma, budget, Interval(0.0, budget.pmax1))])


def altruistic_candidates(ch: ChannelInstance, gamma: float, budget: PowerBudget) -> List[PowerAllocation]:
    """Every branch optimum, QoS-only allocation first. Raises QosInfeasible."""
    out = [qos_only_allocation(ch, gamma, budget)]
    regime = classify_sic_regime(ch)
    if regime.case is not SicCase.UNBLOCKABLE:
        feas = secrecy_feasibility(ch)
        out.append(solve_p2_high_branch(ch, gamma, budget, regime, feas))
        out.append(solve_p2_low_branch(ch, gamma, budget, regime, feas))
    open_range = regime.open_range(budget.pmax1)
    if open_range is not None:
        out.extend(solve_open_region(ch, gamma, budget, open_range))
    return [a for a in out if a is not None]


def solve_altruistic(ch: ChannelInstance, gamma: float, budget: PowerBudget) -> PowerAllocation:
    if classify_sic_regime(ch).case is SicCase.UNBLOCKABLE:
        return solve_unblockable(ch, gamma, budget)
    return pick_best(altruistic_candidates(ch, gamma, budget))


def solve_branch(ch: ChannelInstance, gamma: float, budget: PowerBudget, branch: Branch) -> Optional[PowerAllocation]:
    """Re-solve one labelled subproblem on its own."""
    regime = classify_sic_regime(ch)
    if branch is Branch.QOS_ONLY:
        return qos_only_allocation(ch, gamma, budget)
    if branch in (Branch.HIGH, Branch.LOW):
        if regime.case is SicCase.UNBLOCKABLE:
            return None
        feas = secrecy_feasibility(ch)
        solver = solve_p2_high_branch if branch is Branch.HIGH else solve_p2_low_branch
        return solver(ch, gamma, budget, regime, feas)
    if branch in (Branch.OPEN_HIGH, Branch.OPEN_LOW):
        open_range = regime.open_range(budget.pmax1)
        if open_range is None:
            return None
        return next((a for a in solve_open_region(ch, gamma, budget, open_range) if a.branch is branch), None)
    raise ValueError(f"{branch} is not an altruistic branch")
