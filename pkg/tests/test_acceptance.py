"""Acceptance criteria, one printed PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -s`` (or ``-v``) to see the lines.
"""
import time

import numpy as np
import pytest

from wiretap_ic.altruistic import FeasibilityCase, qos_power, secrecy_feasibility
from wiretap_ic.case_tables import ADVISORY_TABLES
from wiretap_ic.claims import CAMPAIGN, check_claims
from wiretap_ic.egoistic import EgoisticCase, egoistic_bounds, lambda3
from wiretap_ic.errors import QosInfeasible
from wiretap_ic.fractional import (
    BilinearRatioObjective,
    Interval,
    derivative_quadratic,
    maximize_on_interval,
    real_roots,
)
from wiretap_ic.model import PowerBudget, classify_sic_regime
from wiretap_ic.oracle import OracleConfig, Scenario, eps_grid, grid_search
from wiretap_ic.simulation import SimulationRecord, draw_channels, run_cells
from wiretap_ic.verification import random_instances, verify

COUNT = 2000
SEED = 1
GRID_N = 200
GAMMA = 1.0
BUDGET = PowerBudget(2.0, 2.0)
P1_SAMPLES = 10


@pytest.fixture
def report(capsys):
    def emit(label, ok, detail):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] {label}: {detail}")
        assert ok, detail

    return emit


@pytest.mark.parametrize("scenario,limit", [(Scenario.ALTRUISTIC, 60.0), (Scenario.EGOISTIC, 20.0)])
def test_oracle_agreement(report, scenario, limit):
    t = time.perf_counter()
    rep = verify(COUNT, SEED, GRID_N, scenario, GAMMA, BUDGET)
    elapsed = time.perf_counter() - t
    n = 1 if scenario is Scenario.ALTRUISTIC else 2
    report(f"criterion {n} oracle agreement, {scenario.value}", rep.ok and rep.passed == COUNT and elapsed < limit,
           f"{rep.passed}/{COUNT} pass ({rep.qos_infeasible} QoS-infeasible in both), worst gap {rep.worst_gap:.3g}, "
           f"{elapsed:.1f} s (limit {limit:.0f} s)")


def _positive_interval_length(ch, scenario):
    """Length of the power interval where the classifier promises positive secrecy within budget, or None."""
    regime = classify_sic_regime(ch)
    blocked = regime.blocked_range(BUDGET.pmax1)
    if blocked is None or blocked.length <= 0:
        return None
    if scenario is Scenario.ALTRUISTIC:
        f = secrecy_feasibility(ch)
        lo, hi = qos_power(ch, blocked.lo, GAMMA), BUDGET.pmax2
        if f.case is FeasibilityCase.ABOVE_BOUND:
            lo = max(lo, f.bound)
        if f.case is FeasibilityCase.BELOW_BOUND:
            hi = min(hi, f.bound)
        return hi - lo
    e = egoistic_bounds(ch, GAMMA, BUDGET)
    iv = blocked.intersect(Interval(0.0, min(BUDGET.pmax1, lambda3(ch, GAMMA, BUDGET.pmax2))))
    iv = iv.intersect(e.positive_range())
    return None if iv.is_empty else iv.length


def test_classifier_soundness(report):
    bad, impossible, positive = [], 0, 0
    for i, ch in enumerate(random_instances(SEED, COUNT)):
        for scenario in (Scenario.ALTRUISTIC, Scenario.EGOISTIC):
            cfg = OracleConfig(GRID_N, scenario)
            try:
                best = grid_search(ch, GAMMA, BUDGET, cfg).secrecy
            except QosInfeasible:
                continue
            if scenario is Scenario.ALTRUISTIC:
                none_possible = secrecy_feasibility(ch).case is FeasibilityCase.IMPOSSIBLE
            else:
                none_possible = egoistic_bounds(ch, GAMMA, BUDGET).case is EgoisticCase.IMPOSSIBLE
            if none_possible:
                impossible += 1
                if best > eps_grid(ch, GAMMA, BUDGET, cfg):
                    bad.append((i, scenario.value, "impossible but oracle positive"))
                continue
            length = _positive_interval_length(ch, scenario)
            if length is not None and length > 0:
                positive += 1
                if not best > 0:
                    bad.append((i, scenario.value, "positive promised but oracle zero"))
    report("criterion 3 classifier soundness", not bad,
           f"{impossible} impossible and {positive} positive verdicts checked, {len(bad)} violations {bad[:3]}")


def _eq6(ch, p1, p2):
    return p2 * ch.g22 / (p1 * ch.g12 + ch.noise) > p2 * ch.g2e / (p1 * ch.g1e + ch.noise)


def test_sic_regime_soundness(report):
    rng = np.random.default_rng(SEED)
    bad, samples = 0, 0
    for ch in random_instances(SEED, COUNT):
        regime = classify_sic_regime(ch)
        p1 = rng.uniform(0.0, 4.0 * BUDGET.pmax1, P1_SAMPLES)
        p2 = rng.uniform(0.01, BUDGET.pmax2)
        admitted = regime.blocks(p1)
        bad += int(np.sum(admitted != _eq6(ch, p1, p2)))
        samples += len(p1)
    report("criterion 4 SIC-regime soundness", bad == 0, f"{samples} samples, {bad} disagreements")


@pytest.fixture(scope="module")
def campaign():
    t = time.perf_counter()
    channels = draw_channels(CAMPAIGN.seed, CAMPAIGN.trials)
    cells = run_cells(CAMPAIGN, channels)
    records = sorted((c.record for c in cells), key=SimulationRecord.sort_key)
    results = {r.label[:2]: r for r in check_claims(records, cells, channels)}
    return results, time.perf_counter() - t


@pytest.mark.parametrize("claim", ["5a", "5b", "5c", "5d", "5e", "5f"])
def test_claim(report, campaign, claim):
    results, elapsed = campaign
    r = results[claim]
    report(f"criterion {r.label}", r.passed and elapsed < 300, f"{r.detail} (campaign {elapsed:.1f} s)")


@pytest.mark.xfail(strict=True, reason="single-user efficiency is higher at every diagonal budget for all three "
                                       "gammas; recorded as an honest failure")
def test_claim_efficiency(report, campaign):
    results, _ = campaign
    r = results["5g"]
    report(f"criterion {r.label}", r.passed, r.detail)


def _fd_sign_agreement(obj, rng):
    q2, q1, q0 = derivative_quadratic(obj)
    roots = real_roots(q2, q1, q0)
    for p in rng.uniform(0.01, 9.99, 100):
        if any(abs(p - r) < 1e-6 for r in roots):
            continue
        q = q2 * p * p + q1 * p + q0
        fd = (obj(p + 1e-6) - obj(p - 1e-6)) / 2e-6
        if abs(q) > 1e-6 * max(abs(q2) * p * p, abs(q1) * p, abs(q0)) and abs(fd) > 1e-7:
            if np.sign(q) != np.sign(fd):
                return False
    return True


def test_fractional_suite(report):
    t = time.perf_counter()
    problems = []
    r = maximize_on_interval(BilinearRatioObjective(2, 1, 0, 1, 1, 1, 0, 1), Interval(0, 3))
    if not (r.argmax == 3 and abs(r.value - 1.75) < 1e-12):
        problems.append("monotone example")
    dec = BilinearRatioObjective(2, 1, 1, 2, 1, 1, 3, 2)
    r = maximize_on_interval(dec, Interval(0, 10))
    if derivative_quadratic(dec) != (-5, -4, 0) or not (r.argmax == 0 and r.value == 1.0):
        problems.append("decreasing example")
    r = maximize_on_interval(BilinearRatioObjective(2, 0.5, 0, 1, 1, 1, 0.1, 1), Interval(0, 10))
    if not (abs(r.argmax - 2.4542) < 1e-3 and abs(r.value - 1.2572) < 1e-3):
        problems.append("interior example")
    rng = np.random.default_rng(SEED)
    for _ in range(500):
        c = rng.uniform(-5, 5, 8)
        c[5] = rng.uniform(0.05, 5) + max(0.0, -10 * c[4])
        c[7] = rng.uniform(0.05, 5) + max(0.0, -10 * c[6])
        obj = BilinearRatioObjective(*c)
        if not _fd_sign_agreement(obj, rng):
            problems.append("finite-difference sign")
        lo, hi = sorted(rng.uniform(0, 10, 2))
        res = maximize_on_interval(obj, Interval(lo, hi))
        if res.argmax not in [lo, hi, *res.stationary_roots]:
            problems.append("candidate closure")
    elapsed = time.perf_counter() - t
    report("criterion 6 fractional-solver suite", not problems and elapsed < 5,
           f"3 worked examples, 500 random objectives, {len(problems)} problems {problems[:3]}, {elapsed:.2f} s")


def test_paper_faithful_cross_check(report):
    lines, mismatched, matched = [], 0, 0
    for scenario in (Scenario.ALTRUISTIC, Scenario.EGOISTIC):
        rep = verify(COUNT, SEED, GRID_N, scenario, GAMMA, BUDGET, paper_faithful=True)
        for table in sorted({t for t, _ in rep.table_counts}):
            c = {k: rep.table_counts[(table, k)] for k in ("match", "mismatch", "skipped")}
            tag = " advisory" if table in ADVISORY_TABLES else ""
            lines.append(f"T{table}{tag} {c['match']}/{c['mismatch']}/{c['skipped']}")
            if table not in ADVISORY_TABLES:
                mismatched += c["mismatch"]
                matched += c["match"]
    report("criterion 7 case-table cross-check", mismatched == 0 and matched > 0,
           "match/mismatch/skipped " + ", ".join(lines))
