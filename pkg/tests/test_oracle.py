import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from wiretap_ic.altruistic import solve_altruistic
from wiretap_ic.egoistic import solve_egoistic
from wiretap_ic.errors import QosInfeasible
from wiretap_ic.model import Branch, ChannelInstance, PowerAllocation, PowerBudget, clamped_secrecy_rate
from wiretap_ic.oracle import OracleConfig, Scenario, compare, eps_grid, grid_search
from wiretap_ic.verification import random_instances

from conftest import (
    REFERENCE,
    REFERENCE_BUDGET,
    REFERENCE_ORACLE_P2,
    REFERENCE_ORACLE_SECRECY,
    REFERENCE_SECRECY,
    channels,
)


def test_config_validation():
    with pytest.raises(ValueError):
        OracleConfig(grid_n=1)


@pytest.mark.parametrize("text,expected", [("altruistic", Scenario.ALTRUISTIC), ("EGOISTIC", Scenario.EGOISTIC),
                                           ("single-user", Scenario.SINGLE_USER),
                                           ("single_user", Scenario.SINGLE_USER)])
def test_scenario_parse(text, expected):
    assert Scenario.parse(text) is expected


def test_scenario_parse_rejects():
    with pytest.raises(ValueError):
        Scenario.parse("greedy")


class TestGridSearch:
    def test_reference_fixture(self):
        o = grid_search(REFERENCE, 1.0, REFERENCE_BUDGET)
        assert o.p1 == 2.0
        assert o.p2 == pytest.approx(REFERENCE_ORACLE_P2, rel=1e-15)
        assert o.secrecy == pytest.approx(REFERENCE_ORACLE_SECRECY, rel=1e-14)
        assert REFERENCE_SECRECY - o.secrecy <= eps_grid(REFERENCE, 1.0, REFERENCE_BUDGET)

    def test_symmetric(self):
        c = ChannelInstance(2, 0.5, 1, 3, 2, 0.5)
        assert grid_search(c, 1.0, PowerBudget(2, 2)).secrecy == 0.0

    def test_interference_free_reduces_to_single_user(self):
        c = ChannelInstance(3, 0, 1, 2, 1, 0)
        o = grid_search(c, 0.0, PowerBudget(2, 2), OracleConfig(50))
        assert o.p1 == 2.0
        assert o.secrecy == pytest.approx(np.log2(7 / 3), rel=1e-14)

    def test_single_user(self):
        o = grid_search(REFERENCE, 1.0, REFERENCE_BUDGET, OracleConfig(20, Scenario.SINGLE_USER))
        assert o.p1 == 2.0 and o.secrecy == pytest.approx(np.log2(9 / 3))

    def test_qos_unreachable(self):
        c = ChannelInstance(1, 1, 1, 0.1, 1, 1)
        for scen in (Scenario.ALTRUISTIC, Scenario.EGOISTIC):
            with pytest.raises(QosInfeasible):
                grid_search(c, 1.0, PowerBudget(2, 2), OracleConfig(20, scen))

    def test_egoistic_stays_on_curve(self):
        o = grid_search(REFERENCE, 1.0, REFERENCE_BUDGET, OracleConfig(40, Scenario.EGOISTIC))
        assert o.qos_sinr == pytest.approx(1.0, rel=1e-12)


class TestCompare:
    def test_identical(self):
        a = solve_altruistic(REFERENCE, 1.0, REFERENCE_BUDGET)
        r = compare(a, a, 0.0, REFERENCE, 1.0, REFERENCE_BUDGET)
        assert r.gap == 0 and r.passed and r.feasible

    def test_closed_beats_grid(self):
        a = solve_altruistic(REFERENCE, 1.0, REFERENCE_BUDGET)
        o = grid_search(REFERENCE, 1.0, REFERENCE_BUDGET)
        r = compare(a, o, eps_grid(REFERENCE, 1.0, REFERENCE_BUDGET), REFERENCE, 1.0, REFERENCE_BUDGET)
        assert r.gap > 0 and r.passed

    def test_infeasible_fails_regardless(self):
        bad_p2 = 0.5  # SINR 0.5/3 * 4 < 1
        bad = PowerAllocation(2.0, bad_p2, 5.0, 0.0, True, Branch.HIGH)
        good = solve_altruistic(REFERENCE, 1.0, REFERENCE_BUDGET)
        r = compare(bad, good, 1.0, REFERENCE, 1.0, REFERENCE_BUDGET)
        assert r.gap > 0 and not r.feasible and not r.passed
        assert r.slack["qos"] < 0


def test_self_consistency_and_refinement():
    b = PowerBudget(2, 2)
    seen = 0
    for c in random_instances(13, 60):
        try:
            coarse = grid_search(c, 1.0, b, OracleConfig(25))
        except QosInfeasible:
            continue
        fine = grid_search(c, 1.0, b, OracleConfig(49))  # every coarse point is on the finer grid
        assert fine.secrecy >= coarse.secrecy
        assert coarse.secrecy == float(clamped_secrecy_rate(c, coarse.p1, coarse.p2, coarse.sic_blocked))
        seen += 1
    assert seen > 20


def test_gap_shrinks_with_resolution_on_average():
    b = PowerBudget(2, 2)
    gaps = {n: [] for n in (25, 49, 97)}
    for c in random_instances(17, 80):
        try:
            closed = solve_altruistic(c, 1.0, b)
        except QosInfeasible:
            continue
        for n in gaps:
            gaps[n].append(closed.secrecy - grid_search(c, 1.0, b, OracleConfig(n)).secrecy)
    means = [np.mean(gaps[n]) for n in (25, 49, 97)]
    assert means[0] >= means[1] >= means[2] >= 0


@settings(max_examples=50)
@given(channels(noise=1.0), st.sampled_from([Scenario.ALTRUISTIC, Scenario.EGOISTIC]))
def test_solvers_never_lose_to_oracle(c, scen):
    b = PowerBudget(2, 2)
    cfg = OracleConfig(60, scen)
    solver = solve_altruistic if scen is Scenario.ALTRUISTIC else solve_egoistic
    try:
        closed = solver(c, 1.0, b)
        oracle = grid_search(c, 1.0, b, cfg)
    except QosInfeasible:
        return
    r = compare(closed, oracle, eps_grid(c, 1.0, b, cfg), c, 1.0, b, scen)
    assert r.passed, r
