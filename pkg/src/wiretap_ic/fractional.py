"""Exact maximisation of a ratio of two products of affine functions.

Every secrecy objective in the two-user problem, once reduced to a single
power variable, has the shape

    f(P) = (n1 P + n0)(m1 P + m0) / ((d1 P + d0)(e1 P + e0)).

Writing f = Q1/Q2 with quadratics Q1, Q2, the numerator of f' is
Q1' Q2 - Q1 Q2'. Its cubic terms cancel, so the sign of f' is the sign of
a quadratic and the maximum over an interval lies at an endpoint or at a
real root of that quadratic.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Tuple

from .errors import DenominatorNonPositive, EmptyInterval

ROOT_MERGE_TOL = 1e-12
LEADING_COEF_TOL = 1e-14
TIE_RTOL = 1e-12


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float
    flagged_empty: bool = False

    @classmethod
    def empty(cls) -> "Interval":
        return cls(math.nan, math.nan, flagged_empty=True)

    @property
    def is_empty(self) -> bool:
        return self.flagged_empty or not (self.lo <= self.hi)

    @property
    def length(self) -> float:
        return 0.0 if self.is_empty else self.hi - self.lo

    def intersect(self, other: "Interval") -> "Interval":
        if self.is_empty or other.is_empty:
            return Interval.empty()
        return Interval(max(self.lo, other.lo), min(self.hi, other.hi))

    def __contains__(self, x: float) -> bool:
        return not self.is_empty and self.lo <= x <= self.hi


@dataclass(frozen=True)
class BilinearRatioObjective:
    n1: float
    n0: float
    m1: float
    m0: float
    d1: float
    d0: float
    e1: float
    e0: float

    def numerator(self) -> Tuple[float, float, float]:
        """(a2, a1, a0) of the expanded numerator quadratic."""
        return _mul(self.n1, self.n0, self.m1, self.m0)

    def denominator(self) -> Tuple[float, float, float]:
        return _mul(self.d1, self.d0, self.e1, self.e0)

    def __call__(self, p):
        return ((self.n1 * p + self.n0) * (self.m1 * p + self.m0)) / (
            (self.d1 * p + self.d0) * (self.e1 * p + self.e0)
        )


def _mul(a1, a0, b1, b0):
    return a1 * b1, a1 * b0 + a0 * b1, a0 * b0


@dataclass
class SolveResult:
    argmax: float
    value: float
    candidates_examined: List[Tuple[float, float]] = field(default_factory=list)
    stationary_roots: List[float] = field(default_factory=list)


def derivative_quadratic(obj: BilinearRatioObjective) -> Tuple[float, float, float]:
    """Coefficients (q2, q1, q0) of Q1'Q2 - Q1Q2', which carries the sign of f'."""
    a2, a1, a0 = obj.numerator()
    b2, b1, b0 = obj.denominator()
    return a2 * b1 - a1 * b2, 2.0 * (a2 * b0 - a0 * b2), a1 * b0 - a0 * b1


def real_roots(q2: float, q1: float, q0: float) -> List[float]:
    """Real roots of q2 x^2 + q1 x + q0, ascending, without catastrophic cancellation."""
    scale = max(abs(q2), abs(q1), abs(q0))
    if scale == 0.0:
        return []
    # normalise first so tiny or huge coefficients cannot underflow the discriminant
    q2, q1, q0 = q2 / scale, q1 / scale, q0 / scale
    if abs(q2) < LEADING_COEF_TOL:
        if abs(q1) < LEADING_COEF_TOL:
            return []
        return [-q0 / q1]
    disc = q1 * q1 - 4.0 * q2 * q0
    if disc < 0.0:
        return []
    t = -0.5 * (q1 + math.copysign(math.sqrt(disc), q1))
    if t == 0.0:
        return [0.0]
    return sorted({t / q2, q0 / t})


def maximize_on_interval(obj: BilinearRatioObjective, iv: Interval) -> SolveResult:
    """Global maximiser of ``obj`` on the closed interval ``iv``.

    Candidates are both endpoints and every real root of the derivative
    quadratic inside the interval. Near-equal values resolve to the smaller
    point, since unused power is what the efficiency metric rewards.
    """
    if iv.is_empty:
        raise EmptyInterval(f"cannot maximise over empty interval {iv}")
    lo, hi = iv.lo, iv.hi
    for name, (s, c) in (("first", (obj.d1, obj.d0)), ("second", (obj.e1, obj.e0))):
        if not (s * lo + c > 0 and s * hi + c > 0):
            raise DenominatorNonPositive(f"{name} denominator factor {s}*P + {c} is not positive on [{lo}, {hi}]")

    q2, q1, q0 = derivative_quadratic(obj)
    roots = real_roots(q2, q1, q0)
    points = [lo]
    merge = ROOT_MERGE_TOL * max(1.0, abs(lo), abs(hi))
    for r in roots:
        if lo + merge < r < hi - merge:
            points.append(r)
    if hi > lo:
        points.append(hi)
    points.sort()

    examined = [(p, float(obj(p))) for p in points]
    best_p, best_v = examined[0]
    for p, v in examined[1:]:
        if v > best_v + TIE_RTOL * abs(best_v):
            best_p, best_v = p, v
    return SolveResult(best_p, best_v, examined, roots)
