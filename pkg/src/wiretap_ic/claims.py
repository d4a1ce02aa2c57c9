"""Deterministic checks of the qualitative comparisons a campaign should show.

Every check reads the averaged records; the two that are really per-draw
statements (altruistic never loses to egoistic, single-user spends its full
budget) are also checked draw by draw when the per-trial outcomes are given.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .model import PowerAllocation
from .simulation import CellResult, MonteCarloConfig, SimulationRecord

CLAIM_GAMMA = 1.0
CLAIM_BUDGETS = (1.0, 2.0, 4.0, 8.0)
EFFICIENCY_GAMMAS = (0.25, 0.5, 1.0)
EFFICIENCY_BUDGETS = (1.0, 2.0, 4.0)
MONOTONE_ATOL = 1e-12
DOMINANCE_ATOL = 1e-9
POWER_SAVING_MARGIN = 0.1  # interference modes must leave at least 10% of pmax1 unused on average

CAMPAIGN = MonteCarloConfig(seed=7, trials=5000, pmax1_grid=CLAIM_BUDGETS, pmax2_grid=CLAIM_BUDGETS,
                            gamma_list=EFFICIENCY_GAMMAS)


@dataclass
class ClaimResult:
    label: str
    passed: bool
    detail: str


Key = Tuple[str, float, float, float]


def _index(records: Sequence[SimulationRecord]) -> Dict[Key, SimulationRecord]:
    return {(r.scenario, r.gamma, r.pmax1, r.pmax2): r for r in records}


def _nondecreasing(xs: Sequence[float]) -> bool:
    return all(b >= a - MONOTONE_ATOL for a, b in zip(xs, xs[1:]))


def _strictly(xs: Sequence[float], up: bool) -> bool:
    return all((b > a) if up else (b < a) for a, b in zip(xs, xs[1:]))


def _row(idx, sc, g, budgets, field, fixed, along_p1):
    keys = [(sc, g, b, fixed) if along_p1 else (sc, g, fixed, b) for b in budgets]
    return [getattr(idx[k], field) for k in keys]


def claim_budget_monotone(idx, g=CLAIM_GAMMA, budgets=CLAIM_BUDGETS) -> ClaimResult:
    bad = []
    for sc in ("altruistic", "egoistic"):
        for fixed in budgets:
            for along_p1 in (True, False):
                xs = _row(idx, sc, g, budgets, "avg_secrecy", fixed, along_p1)
                if not _nondecreasing(xs):
                    bad.append(f"{sc} along {'pmax1' if along_p1 else 'pmax2'} at {fixed}: {xs}")
    return ClaimResult("5a secrecy nondecreasing in pmax1 and pmax2", not bad, "; ".join(bad) or "all rows monotone")


def claim_altruism_dominates(idx, outcomes: Optional[Dict[Key, List[Optional[PowerAllocation]]]] = None,
                             g=CLAIM_GAMMA, budgets=CLAIM_BUDGETS) -> ClaimResult:
    bad, draws = [], 0
    for p1 in budgets:
        for p2 in budgets:
            a, e = idx[("altruistic", g, p1, p2)], idx[("egoistic", g, p1, p2)]
            if a.avg_secrecy < e.avg_secrecy - DOMINANCE_ATOL:
                bad.append(f"avg at ({p1},{p2})")
            if outcomes is not None:
                for x, y in zip(outcomes[("altruistic", g, p1, p2)], outcomes[("egoistic", g, p1, p2)]):
                    if x is not None and y is not None:
                        draws += 1
                        if x.secrecy < y.secrecy - DOMINANCE_ATOL:
                            bad.append(f"draw at ({p1},{p2})")
    detail = f"{draws} paired draws checked" if outcomes is not None else "averages only"
    return ClaimResult("5b altruistic secrecy >= egoistic", not bad, "; ".join(bad[:5]) or detail)


def claim_altruism_spends_more(idx, g=CLAIM_GAMMA, budgets=CLAIM_BUDGETS) -> ClaimResult:
    bad = []
    for p1 in budgets:
        for p2 in budgets:
            a, e = idx[("altruistic", g, p1, p2)], idx[("egoistic", g, p1, p2)]
            for name in ("avg_p1", "avg_p2"):
                if getattr(a, name) < getattr(e, name) - DOMINANCE_ATOL:
                    bad.append(f"{name} at ({p1},{p2}): {getattr(a, name):.6g} < {getattr(e, name):.6g}")
    return ClaimResult("5c altruistic consumes at least egoistic p1 and p2", not bad, "; ".join(bad) or "all cells")


def claim_excess_sinr_trends(idx, g=CLAIM_GAMMA, budgets=CLAIM_BUDGETS) -> ClaimResult:
    bad = []
    for fixed in budgets:
        down = _row(idx, "altruistic", g, budgets, "avg_excess_sinr", fixed, True)
        up = _row(idx, "altruistic", g, budgets, "avg_excess_sinr", fixed, False)
        if not _strictly(down, up=False):
            bad.append(f"not decreasing in pmax1 at pmax2={fixed}: {down}")
        if not _strictly(up, up=True):
            bad.append(f"not increasing in pmax2 at pmax1={fixed}: {up}")
    return ClaimResult("5d excess SINR falls with pmax1, rises with pmax2", not bad, "; ".join(bad) or "all rows")


def claim_pmax1_more_effective(idx, g=CLAIM_GAMMA, lo=1.0, hi=8.0, mid=2.0) -> ClaimResult:
    parts, ok = [], True
    for sc in ("altruistic", "egoistic"):
        d1 = idx[(sc, g, hi, mid)].avg_secrecy - idx[(sc, g, lo, mid)].avg_secrecy
        d2 = idx[(sc, g, mid, hi)].avg_secrecy - idx[(sc, g, mid, lo)].avg_secrecy
        ok &= d1 > d2
        parts.append(f"{sc}: pmax1 step {d1:+.4f} vs pmax2 step {d2:+.4f}")
    return ClaimResult("5e raising pmax1 beats raising pmax2", ok, "; ".join(parts))


def claim_power_saving(idx, outcomes=None, channels=None, g=CLAIM_GAMMA, budgets=CLAIM_BUDGETS) -> ClaimResult:
    bad = []
    for sc in ("altruistic", "egoistic"):
        for p1 in budgets:
            for p2 in budgets:
                r = idx[(sc, g, p1, p2)]
                if not r.avg_p1 <= (1 - POWER_SAVING_MARGIN) * p1:
                    bad.append(f"{sc} ({p1},{p2}) avg_p1={r.avg_p1:.4g}")
    shares = [idx[("single-user", g, p1, budgets[0])].avg_p1 / p1 for p1 in budgets]
    if max(shares) - min(shares) > 1e-12 * max(shares):
        bad.append(f"single-user power share varies with pmax: {shares}")
    if outcomes is not None and channels is not None:
        for p1 in budgets:
            for ch, a in zip(channels, outcomes[("single-user", g, p1, budgets[0])]):
                if a is None:
                    continue
                if a.p1 != (p1 if ch.g11 > ch.g1e else 0.0):
                    bad.append(f"single-user draw at pmax={p1} spends {a.p1}")
                    break
    detail = (f"interference avg_p1 <= {1 - POWER_SAVING_MARGIN:.0%} of pmax1; single-user spends pmax on "
              f"{shares[0]:.1%} of draws")
    return ClaimResult("5f interference saves power, single-user spends pmax", not bad, "; ".join(bad[:5]) or detail)


def claim_efficiency(idx, gammas=EFFICIENCY_GAMMAS, budgets=EFFICIENCY_BUDGETS) -> ClaimResult:
    """Some gamma must give the altruistic mode higher efficiency than single-user at every budget b = pmax1 = pmax2."""
    lines, winner = [], None
    for g in gammas:
        pairs = [(idx[("altruistic", g, b, b)].avg_energy_efficiency, idx[("single-user", g, b, b)].avg_energy_efficiency)
                 for b in budgets]
        wins = [a > s for a, s in pairs]
        lines.append(f"gamma={g}: " + ", ".join(f"b={b}: {a:.4f} vs {s:.4f}" for b, (a, s) in zip(budgets, pairs)))
        if all(wins) and winner is None:
            winner = g
    return ClaimResult("5g interference more energy-efficient than single-user for some gamma", winner is not None,
                       "; ".join(lines))


def check_claims(records: Sequence[SimulationRecord], cells: Optional[Sequence[CellResult]] = None,
                 channels=None) -> List[ClaimResult]:
    idx = _index(records)
    outcomes = None
    if cells is not None:
        outcomes = {(c.record.scenario, c.record.gamma, c.record.pmax1, c.record.pmax2): c.outcomes for c in cells}
    return [
        claim_budget_monotone(idx),
        claim_altruism_dominates(idx, outcomes),
        claim_altruism_spends_more(idx),
        claim_excess_sinr_trends(idx),
        claim_pmax1_more_effective(idx),
        claim_power_saving(idx, outcomes, channels),
        claim_efficiency(idx),
    ]
