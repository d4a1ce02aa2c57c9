from dataclasses import replace

import pytest

from wiretap_ic.claims import (
    CLAIM_BUDGETS,
    EFFICIENCY_BUDGETS,
    EFFICIENCY_GAMMAS,
    claim_altruism_dominates,
    claim_altruism_spends_more,
    claim_budget_monotone,
    claim_efficiency,
    claim_excess_sinr_trends,
    claim_pmax1_more_effective,
    claim_power_saving,
)
from wiretap_ic.model import Branch, PowerAllocation
from wiretap_ic.simulation import SimulationRecord


def _record(scen, g, p1, p2):
    # a synthetic campaign in which every claimed trend holds
    secrecy = (1.0 if scen == "altruistic" else 0.9) * (0.2 * p1 + 0.05 * p2) / (1 + 0.01 * (p1 + p2))
    use = 0.5 if scen == "altruistic" else 0.4
    excess = 1.0 + p2 - 0.1 * p1 if scen == "altruistic" else None
    if scen == "single-user":
        secrecy, use = 0.1 * p1, 0.5
    eff = secrecy / (use * p1)
    if scen == "altruistic":
        eff *= 2
    return SimulationRecord(scen, g, p1, p2, secrecy, use * p1, use * p2 if scen != "single-user" else 0.0, excess,
                            eff, 0.0, 100)


@pytest.fixture
def idx():
    out = {}
    for scen in ("altruistic", "egoistic", "single-user"):
        for g in sorted(set(EFFICIENCY_GAMMAS) | {1.0}):
            for p1 in CLAIM_BUDGETS:
                for p2 in CLAIM_BUDGETS:
                    out[(scen, g, p1, p2)] = _record(scen, g, p1, p2)
    return out


def test_all_hold_on_consistent_data(idx):
    for check in (claim_budget_monotone, claim_altruism_dominates, claim_altruism_spends_more,
                  claim_excess_sinr_trends, claim_pmax1_more_effective, claim_power_saving, claim_efficiency):
        r = check(idx)
        assert r.passed, (r.label, r.detail)


def test_monotone_violation(idx):
    k = ("egoistic", 1.0, 4.0, 2.0)
    idx[k] = replace(idx[k], avg_secrecy=0.0)
    assert not claim_budget_monotone(idx).passed


def test_dominance_per_draw():
    a = PowerAllocation(1, 1, 0.5, 1, True, Branch.HIGH)
    e = PowerAllocation(1, 1, 0.6, 1, True, Branch.EGOISTIC_BLOCKED)
    recs = {(s, 1.0, p1, p2): _record(s, 1.0, p1, p2) for s in ("altruistic", "egoistic")
            for p1 in CLAIM_BUDGETS for p2 in CLAIM_BUDGETS}
    outcomes = {k: [a] if k[0] == "altruistic" else [e] for k in recs}
    r = claim_altruism_dominates(recs, outcomes)
    assert not r.passed and "draw" in r.detail


def test_spending_violation(idx):
    k = ("egoistic", 1.0, 2.0, 2.0)
    idx[k] = replace(idx[k], avg_p2=10.0)
    assert not claim_altruism_spends_more(idx).passed


def test_excess_trend_must_be_strict(idx):
    k = ("altruistic", 1.0, 2.0, 1.0)
    idx[k] = replace(idx[k], avg_excess_sinr=idx[("altruistic", 1.0, 1.0, 1.0)].avg_excess_sinr)
    assert not claim_excess_sinr_trends(idx).passed


def test_pmax2_step_winning_fails(idx):
    k = ("altruistic", 1.0, 2.0, 8.0)
    idx[k] = replace(idx[k], avg_secrecy=100.0)
    assert not claim_pmax1_more_effective(idx).passed


def test_power_saving_margin(idx):
    k = ("altruistic", 1.0, 8.0, 1.0)
    idx[k] = replace(idx[k], avg_p1=7.5)
    assert not claim_power_saving(idx).passed


def test_efficiency_needs_every_budget(idx):
    for g in EFFICIENCY_GAMMAS:
        k = ("altruistic", g, EFFICIENCY_BUDGETS[0], EFFICIENCY_BUDGETS[0])
        idx[k] = replace(idx[k], avg_energy_efficiency=0.0)
    assert not claim_efficiency(idx).passed
