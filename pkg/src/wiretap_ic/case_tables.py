"""Literal case tables for the closed-form branch optima, kept for cross-checking.

Each table computes its published constants, walks its sign conditions and
returns the point it prescribes. Nothing here feeds the solvers; the generic
maximiser is authoritative. A table result is marked *unambiguous* only when
every tested sign is nonzero, exactly one row applies, every operand of that
row is defined, and any stationary root it uses sits clear of the domain
ends. Cross-checks are only meaningful on unambiguous results.

Tables 4 and 6 rely on readings of notation that is internally inconsistent
(see ``notes`` on each result); their mismatches are reported, never fatal.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence

from .altruistic import (
    chi_for,
    low_branch_domain,
    p2_feasibility_domains,
    path_objective,
    qos_power,
    secrecy_feasibility,
    solve_p2_high_branch,
    solve_p2_low_branch,
)
from .egoistic import curve_objective, egoistic_bounds, lambda3
from .fractional import TIE_RTOL, BilinearRatioObjective, Interval, maximize_on_interval
from .model import ChannelInstance, PowerBudget, SicCase, classify_sic_regime

ADVISORY_TABLES = frozenset({4, 6})
MATCH_RTOL = 1e-6
ENDPOINT_RTOL = 1e-9


@dataclass
class CaseTableIntermediates:
    """Named constants of one table, namespaced so symbols never collide across tables."""

    table: int
    values: Dict[str, float] = field(default_factory=dict)

    def __getitem__(self, key: str) -> float:
        return self.values[key]


@dataclass
class CaseTableResult:
    table: int
    row: Optional[str]
    point: Optional[float]
    unambiguous: bool
    intermediates: CaseTableIntermediates
    notes: List[str] = field(default_factory=list)


@dataclass
class CrossCheck:
    table: int
    row: Optional[str]
    table_point: Optional[float]
    generic_point: Optional[float]
    compared: bool
    match: bool
    advisory: bool
    rel_diff: float = math.nan
    notes: List[str] = field(default_factory=list)

    @property
    def discrepancy(self) -> bool:
        return self.compared and not self.match


class _Ambiguous(Exception):
    pass


def _sign(x: float, name: str) -> int:
    if x == 0 or not math.isfinite(x):
        raise _Ambiguous(f"{name} has no definite sign ({x!r})")
    return 1 if x > 0 else -1


def _argmax(obj: BilinearRatioObjective, points: Sequence[float]) -> float:
    """Best of the listed points by the ratio objective, earliest-smallest on ties."""
    pts = list(points)
    for p in pts:
        if p is None or not math.isfinite(p) or p < 0:
            raise _Ambiguous(f"candidate {p!r} is undefined or negative")
    pts.sort()
    best_p, best_v = pts[0], obj(pts[0])
    for p in pts[1:]:
        v = obj(p)
        if v > best_v + TIE_RTOL * abs(best_v):
            best_p, best_v = p, v
    return best_p


def _root(num_lin: float, delta: float, den: float) -> float:
    if delta < 0:
        raise _Ambiguous("stationary root is complex")
    if den == 0:
        raise _Ambiguous("stationary root has zero denominator")
    return (-num_lin - math.sqrt(delta)) / (2.0 * den)


def _inside(p: float, dom: Interval) -> bool:
    """Strict domain membership; a root touching an end is not trusted."""
    if dom.is_empty:
        return False
    guard = ENDPOINT_RTOL * max(1.0, abs(dom.lo), abs(dom.hi))
    if abs(p - dom.lo) <= guard or abs(p - dom.hi) <= guard:
        raise _Ambiguous("stationary root coincides with a domain end")
    return dom.lo < p < dom.hi


def _select(rows: Sequence[tuple]) -> tuple:
    """Rows are (label, applies, action); exactly one must apply."""
    hits = [r for r in rows if r[1]]
    if len(hits) != 1:
        raise _Ambiguous(f"{len(hits)} rows apply")
    return hits[0]


def _run(table: int, consts: CaseTableIntermediates, body: Callable[[], tuple]) -> CaseTableResult:
    try:
        row, point = body()
        return CaseTableResult(table, row, point, True, consts)
    except _Ambiguous as exc:
        return CaseTableResult(table, None, None, False, consts, [str(exc)])


def table_high_branch(ch: ChannelInstance, gamma: float, budget: PowerBudget) -> CaseTableResult:
    """Case table for P1 fixed at its cap, optimised over P2."""
    regime = classify_sic_regime(ch)
    feas = secrecy_feasibility(ch)
    chi = chi_for(regime, budget.pmax1)
    s = ch.noise
    a, b, c, d = chi * ch.g11, ch.g21, chi * ch.g1e, ch.g2e
    k = CaseTableIntermediates(2, dict(a=a, b=b, c=c, d=d, C=b - d, D=b * (c + s) - d * (a + s), E=b * c - a * d,
                                       F=c * d * s - a * (b * (c + s) - c * d), G=c - a, chi=chi))
    k.values["Delta"] = 4 * a * b * c * d * k["C"] * k["D"] * s

    def body():
        if regime.case is SicCase.UNBLOCKABLE:
            raise _Ambiguous("regime does not block SIC")
        _sign(feas.a, "A")
        _sign(feas.b, "B")
        d18, _ = p2_feasibility_domains(ch, gamma, budget, regime, feas)
        if d18.is_empty:
            raise _Ambiguous("domain is empty")
        alpha, beta, lam1, pm2 = d18.hi, d18.lo, qos_power(ch, chi, gamma), budget.pmax2
        k.values.update(alpha=alpha, beta=beta, lambda1=lam1)
        obj = path_objective(ch, 0.0, chi, 1.0, True)
        cd, A, E = _sign(k["C"] * k["D"], "CD"), _sign(feas.a, "A"), _sign(k["E"], "E")

        def root():
            p = _root(2 * b * d * k["G"] * s, k["Delta"], b * d * k["E"])
            k.values["P2C"] = p
            return p

        if cd < 0:
            label, _, act = _select([
                ("1a", A < 0 and E > 0, lambda: alpha),
                ("1b", E < 0, lambda: beta if A > 0 else lam1),
            ])
            return label, act()
        F, G = _sign(k["F"], "F"), _sign(k["G"], "G")

        def r2b():
            p = root()
            if _inside(p, d18):
                return p
            return _argmax(obj, [beta, pm2] if A > 0 else [lam1, pm2])

        def with_root(rest):
            p = root()
            return _argmax(obj, [p, *rest] if _inside(p, d18) else rest)

        label, _, act = _select([
            ("2a", A < 0 and E > 0 and F < 0, lambda: _argmax(obj, [lam1, alpha])),
            ("2b", E < 0 and F > 0, r2b),
            ("2c", E > 0 and F > 0 and G < 0, lambda: with_root([lam1, alpha])),
            ("2d", E < 0 and F < 0 and G > 0, lambda: with_root([beta, pm2])),
            ("2e", E < 0 and F < 0 and G < 0, lambda: lam1),
        ])
        return label, act()

    return _run(2, k, body)


def table_low_branch(ch: ChannelInstance, gamma: float, budget: PowerBudget) -> CaseTableResult:
    """Case table for the QoS-tight branch, optimised over P2."""
    regime = classify_sic_regime(ch)
    feas = secrecy_feasibility(ch)
    s, gm = ch.noise, gamma
    e, f, g, h, i, j = ch.g11, ch.g22, ch.g12, ch.g21, ch.g1e, ch.g2e
    k = CaseTableIntermediates(3, dict(
        H=h - j,
        I=-f * i + g * h * gm - (h * i + g * j) * gm + e * (f + j * gm),
        J=-g * h * h * i * gm * (f + j * gm) + e * (f * f * i * (-h + j) + f * g * j * j * gm + g * h * j * j * gm * gm),
        K=-g * i * (f + j * gm) + e * (f * g + g * h * gm - h * i * gm + i * j * gm),
        L=-g * h * i * (f + j * gm) + e * (f * h * i + f * g * j - f * i * j + g * h * j * gm),
    ))
    k.values["Delta"] = 4 * e * g * i * k["H"] * k["I"] * s**4 * gm * (f + h * gm) * (f + j * gm)

    def body():
        if regime.case is SicCase.UNBLOCKABLE:
            raise _Ambiguous("regime does not block SIC")
        if gm == 0 or g == 0:
            raise _Ambiguous("QoS-tight branch degenerates")
        _sign(feas.a, "A")
        _sign(feas.b, "B")
        _, d19 = p2_feasibility_domains(ch, gamma, budget, regime, feas)
        if d19.is_empty:
            raise _Ambiguous("domain is empty")
        if low_branch_domain(ch, gamma, budget, regime, feas) != d19:
            raise _Ambiguous("SIC floor trims the domain")
        lo, hi = d19.lo, d19.hi
        k.values.update(lo=lo, hi=hi)
        if not feas.case.positive_possible:
            raise _Ambiguous("no row covers the impossible case")
        obj = path_objective(ch, ch.g22, -gm * s, gm * ch.g12, True)
        hi_sign, J = _sign(k["H"] * k["I"], "HI"), _sign(k["J"], "J")

        def root():
            p = _root(2 * s * gm * k["L"], k["Delta"], k["J"])
            k.values["P2C"] = p
            return p

        def with_root(rest, alone=False):
            p = root()
            if _inside(p, d19):
                return p if alone else _argmax(obj, [p, *rest])
            return _argmax(obj, rest)

        if hi_sign < 0:
            label, _, act = _select([("1a", J > 0, lambda: hi), ("1b", J < 0, lambda: lo)])
            return label, act()
        K = _sign(k["K"], "K")
        L = _sign(k["L"], "L") if J == K else 0
        label, _, act = _select([
            ("2a", J > 0 and K < 0, lambda: _argmax(obj, [lo, hi])),
            ("2b", J < 0 and K > 0, lambda: with_root([lo, hi], alone=True)),
            ("2c", (J > 0 and K > 0 and L < 0) or (J < 0 and K < 0 and L > 0), lambda: with_root([lo, hi])),
            ("2d", J > 0 and K > 0 and L > 0, lambda: hi),
            ("2e", J < 0 and K < 0 and L < 0, lambda: lo),
        ])
        return label, act()

    return _run(3, k, body)


def table_unblockable(ch: ChannelInstance, gamma: float, budget: PowerBudget) -> CaseTableResult:
    """Case table for the SIC-open altruistic problem (QoS-tight branch reading)."""
    regime = classify_sic_regime(ch)
    s, gm = ch.noise, gamma
    a, b, c, d, e = ch.g11, ch.g22, ch.g12, ch.g21, ch.g1e
    k = CaseTableIntermediates(4, dict(
        A=b * (a - e) * s + d * (-e * gm * s + c * gm * s),
        B=2 * b * d * e * (a * gm * s - c * gm * s),
        C=-b * c * e * gm * s**2 + a * (b * c * gm * s**2 + d * gm * s * (-e * gm * s + c * gm * s)),
        D=-b * d * e * (a * b + c * d * gm),
    ))
    k.values["Delta"] = 4 * k["A"] * a * b * c * d * e * gm * (d * gm * s + b * s)
    notes = ["advisory: constants mix noise exponents and the root uses a late-defined D"]

    def body():
        if regime.case is not SicCase.UNBLOCKABLE:
            raise _Ambiguous("regime blocks SIC")
        if gm == 0 or c == 0 or e == 0 or d == 0:
            raise _Ambiguous("degenerate gains")
        lam1, lam2 = qos_power(ch, budget.pmax1, gm), qos_power(ch, 0.0, gm)
        psi = s * (a - e) / (e * d)
        vs = min(budget.pmax2, psi, lam1)
        dom = Interval(lam2, vs)
        k.values.update(psi=psi, varsigma=vs, lambda1=lam1, lambda2=lam2)
        obj = path_objective(ch, ch.g22, -gm * s, gm * ch.g12, False)
        A = _sign(k["A"], "A")
        if A < 0:
            return "1", lam2
        B, C = _sign(k["B"], "B"), _sign(k["C"], "C")

        def r2a():
            p = _root(k["B"], k["Delta"], k["D"])
            k.values["P2C"] = p
            return p if _inside(p, dom) else _argmax(obj, [lam2, psi])

        label, _, act = _select([
            ("2a", C > 0 or (B > 0 and C < 0), r2a),
            ("2b", B < 0 and C < 0, lambda: _argmax(obj, [lam2, psi])),
        ])
        return label, act()

    res = _run(4, k, body)
    res.notes[:0] = notes
    return res


def _egoistic_domain(ch, gamma, budget, regime) -> Interval:
    cap = Interval(0.0, min(budget.pmax1, lambda3(ch, gamma, budget.pmax2)))
    blocked = regime.blocked_range(budget.pmax1)
    if blocked is None:
        return Interval.empty()
    return blocked.intersect(cap).intersect(egoistic_bounds(ch, gamma, budget).positive_range())


def table_egoistic(ch: ChannelInstance, gamma: float, budget: PowerBudget) -> CaseTableResult:
    """Case table for the egoistic problem with SIC blocked, optimised over P1."""
    regime = classify_sic_regime(ch)
    s = ch.noise
    eb = egoistic_bounds(ch, gamma, budget)
    a, b = ch.g12, ch.g11
    c = gamma * ch.g21 / ch.g22
    d = ch.g1e
    e = gamma * ch.g2e / ch.g22
    k = CaseTableIntermediates(5, dict(
        a=a, b=b, c=c, d=d, e=e, Q=c - e, R=-(1 + c) * d + a * (c - e) + b * (1 + e),
        S=-a * c * c * d * (1 + e) + b * (e * (d + a * e) + c * (-d + a * e * e)),
        T=-(1 + c) * d + b * (1 + e), U=b * e - c * d,
    ))
    k.values["Delta"] = 4 * a * b * d * k["Q"] * k["R"] * s**4 * (1 + c) * (1 + e)

    def body():
        if regime.case is SicCase.UNBLOCKABLE:
            raise _Ambiguous("regime does not block SIC")
        if gamma == 0 or a == 0:
            raise _Ambiguous("degenerate QoS curve")
        dom = _egoistic_domain(ch, gamma, budget, regime)
        if dom.is_empty:
            raise _Ambiguous("domain is empty")
        eta = min(budget.pmax1, eb.lambda3)
        phi3 = eb.a_p / eb.b_p if eb.b_p != 0 else None
        omega = regime.omega
        theta = min(eta, phi3) if phi3 is not None else None
        k.values.update(eta=eta, phi3=phi3 if phi3 is not None else math.nan,
                        omega=omega if omega is not None else math.nan)

        def need(x, name):
            if x is None:
                raise _Ambiguous(f"{name} is undefined here")
            return x

        def mx(x, y):
            return max(need(x, "phi3"), need(y, "omega"))

        def mn(x, y):
            return min(need(x, "operand"), need(y, "omega"))

        r7a, r7b, r7c = (regime.case is SicCase.BLOCK_ABOVE, regime.case is SicCase.BLOCK_ALWAYS,
                         regime.case is SicCase.BLOCK_BELOW)
        obj = curve_objective(ch, gamma, True)
        Q, R, S, Bp = _sign(k["Q"], "Q"), _sign(k["R"], "R"), _sign(k["S"], "S"), _sign(eb.b_p, "B'")
        _sign(eb.a_p, "A'")

        def root():
            p = _root(2 * a * (1 + c) * (1 + e) * k["U"] * s, k["Delta"], a * k["S"])
            k.values["P1C"] = p
            return p

        def with_root(rest, alone=False):
            p = root()
            if _inside(p, dom):
                return p if alone else _argmax(obj, [p, *rest])
            return _argmax(obj, rest)

        def sub(rows):
            label, _, act = _select(rows)
            return label, act()

        if Q * R < 0:
            if S > 0 and (r7a or r7b):
                return sub([("1a-i", Q > 0 and R < 0, lambda: eta),
                            ("1a-ii", Bp < 0 and Q < 0 and R > 0, lambda: need(theta, "theta")),
                            ("1a-iii", Bp > 0 and Q < 0 and R > 0, lambda: eta)])
            if S > 0 and r7c:
                return sub([("1b-i", Q > 0 and R < 0, lambda: mn(eta, omega)),
                            ("1b-ii", Bp < 0 and Q < 0 and R > 0, lambda: mn(theta, omega)),
                            ("1b-iii", Bp > 0 and Q < 0 and R > 0, lambda: mn(eta, omega))])
            if S < 0 and r7a:
                return sub([("1c-i", Bp > 0 and Q > 0 and R < 0, lambda: mx(phi3, omega)),
                            ("1c-ii", Q < 0 and R > 0, lambda: omega)])
            if S < 0 and (r7c or r7b):
                return sub([("1d-i", Bp > 0 and Q > 0 and R < 0, lambda: need(phi3, "phi3")),
                            ("1d-ii", Q < 0 and R > 0, lambda: 0.0)])
            raise _Ambiguous("no row applies")

        T = _sign(k["T"], "T")
        U = _sign(k["U"], "U")
        rows = []
        if S > 0 and T < 0 and Bp > 0:
            rows.append(("2a", True, lambda: _argmax(obj, [mx(phi3, omega), eta]) if r7a else
                         _argmax(obj, [need(phi3, "phi3"), mn(eta, omega)]) if r7c else
                         _argmax(obj, [need(phi3, "phi3"), eta])))
        if S < 0 and T > 0:
            if r7a:
                rows.append(("2b", True, lambda: with_root([omega, eta] if Bp > 0 else [omega, need(theta, "theta")],
                                                           alone=True)))
            elif r7c:
                rows.append(("2c", True, lambda: with_root([0.0, mn(eta, omega)] if Bp > 0 else
                                                           [0.0, mn(theta, omega)], alone=True)))
            else:
                rows.append(("2d", True, lambda: with_root([0.0, eta] if Bp > 0 else [0.0, need(theta, "theta")],
                                                           alone=True)))
        if S > 0 and T > 0 and U < 0:
            if r7a:
                rows.append(("2e", True, lambda: with_root([omega, need(theta, "theta")])))
            elif r7c:
                rows.append(("2f", True, lambda: with_root([0.0, mn(theta, omega)])))
            else:
                rows.append(("2g", True, lambda: with_root([0.0, need(theta, "theta")])))
        if S < 0 and T < 0 and U > 0:
            if r7a or r7b:
                rows.append(("2h", True, lambda: with_root([mx(phi3, omega) if r7a else need(phi3, "phi3"), eta])))
            else:
                rows.append(("2i", True, lambda: with_root([need(phi3, "phi3"), mn(eta, omega)])))
        if S > 0 and T > 0 and U > 0:
            rows.append(("2j", True, lambda: mn(eta, omega) if r7c else eta))
        return sub(rows)

    return _run(5, k, body)


def table_egoistic_unblockable(ch: ChannelInstance, gamma: float, budget: PowerBudget) -> CaseTableResult:
    """Case table for the egoistic problem with SIC open (positional reading of its symbols)."""
    regime = classify_sic_regime(ch)
    s, gm = ch.noise, gamma
    a, b, c, d, e = ch.g11, ch.g12, ch.g21, ch.g22, ch.g1e
    k = CaseTableIntermediates(6, dict(
        E=a * d + b * c * gm - e * (d + c * gm), F=a * d - e * (d + c * gm),
        G=-2 * b * c * e * gm * (d + c * gm) * s, H=-b * c * e * gm * (a * d + b * c * gm),
    ))
    k.values["Delta"] = 4 * k["E"] * a * b * c * d * e * gm * (d + c * gm) * s**2
    notes = ["advisory: symbols a-e read positionally as f-j; the returned variable is P1"]

    def body():
        if regime.case is not SicCase.UNBLOCKABLE:
            raise _Ambiguous("regime blocks SIC")
        if gm == 0 or b == 0 or c == 0 or e == 0:
            raise _Ambiguous("degenerate gains")
        cap = min(budget.pmax1, lambda3(ch, gm, budget.pmax2))
        rho = s * (a - e) * d / (gm * e * c * b) - s / b
        tau = min(cap, rho)
        dom = Interval(0.0, cap)
        k.values.update(rho=rho, tau=tau)
        obj = curve_objective(ch, gm, False)
        E = _sign(k["E"], "E")
        if E < 0:
            return "1", 0.0
        F = _sign(k["F"], "F")
        if F > 0:
            p = _root(k["G"], k["Delta"], k["H"])
            k.values["P1C"] = p
            return "2a", p if _inside(p, dom) else _argmax(obj, [0.0, tau])
        return "2b", _argmax(obj, [0.0, tau])

    res = _run(6, k, body)
    res.notes[:0] = notes
    return res


def _generic_point(table: int, ch: ChannelInstance, gamma: float, budget: PowerBudget) -> Optional[float]:
    regime = classify_sic_regime(ch)
    if table in (2, 3):
        feas = secrecy_feasibility(ch)
        solver = solve_p2_high_branch if table == 2 else solve_p2_low_branch
        alloc = solver(ch, gamma, budget, regime, feas)
        return None if alloc is None else alloc.p2
    if table == 4:
        dom = Interval(qos_power(ch, 0.0, gamma), min(qos_power(ch, budget.pmax1, gamma), budget.pmax2))
        if dom.is_empty or gamma == 0 or ch.g12 == 0:
            return None
        return maximize_on_interval(path_objective(ch, ch.g22, -gamma * ch.noise, gamma * ch.g12, False), dom).argmax
    if table == 5:
        dom = _egoistic_domain(ch, gamma, budget, regime)
        return None if dom.is_empty else maximize_on_interval(curve_objective(ch, gamma, True), dom).argmax
    dom = Interval(0.0, min(budget.pmax1, lambda3(ch, gamma, budget.pmax2)))
    return None if dom.is_empty else maximize_on_interval(curve_objective(ch, gamma, False), dom).argmax


TABLES = {2: table_high_branch, 3: table_low_branch, 4: table_unblockable, 5: table_egoistic,
          6: table_egoistic_unblockable}


def cross_check(table: int, ch: ChannelInstance, gamma: float, budget: PowerBudget) -> CrossCheck:
    """Evaluate one table and compare its point with the generic maximiser on the same subproblem."""
    res = TABLES[table](ch, gamma, budget)
    advisory = table in ADVISORY_TABLES
    if not res.unambiguous:
        return CrossCheck(table, None, None, None, False, False, advisory, notes=res.notes)
    generic = _generic_point(table, ch, gamma, budget)
    if generic is None:
        return CrossCheck(table, res.row, res.point, None, False, False, advisory, notes=["generic subproblem absent"])
    scale = max(abs(generic), abs(res.point))
    diff = abs(res.point - generic) / scale if scale > 0 else 0.0
    return CrossCheck(table, res.row, res.point, generic, True, diff <= MATCH_RTOL, advisory, diff, res.notes)


def scenario_tables(scenario_value: str, ch: ChannelInstance) -> List[int]:
    """Tables that apply to an instance under the given scenario name."""
    unblockable = classify_sic_regime(ch).case is SicCase.UNBLOCKABLE
    if scenario_value == "altruistic":
        return [4] if unblockable else [2, 3]
    if scenario_value == "egoistic":
        return [6] if unblockable else [5]
    return []
