"""Two-user wiretap interference channel: gains, rates and SIC blocking.

Every gain is a power gain |h|^2. Naming follows the link, with the
transmitter first: ``g21`` is user 2 -> destination 1, ``g1e`` is user 1 ->
eavesdropper. All rate functions return bits/s/Hz and accept either floats
or numpy arrays for the powers.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import InvalidInstance
from .fractional import Interval

DEFAULT_TOL = 1e-9

GAIN_NAMES = ("g11", "g21", "g12", "g22", "g1e", "g2e")


def _check_finite(name: str, value: float) -> None:
    if not math.isfinite(value):
        raise InvalidInstance(f"{name} must be finite, got {value!r}")


@dataclass(frozen=True)
class ChannelInstance:
    g11: float
    g21: float
    g12: float
    g22: float
    g1e: float
    g2e: float
    noise: float = 1.0

    def __post_init__(self):
        for name in GAIN_NAMES:
            value = float(getattr(self, name))
            _check_finite(name, value)
            if value < 0:
                raise InvalidInstance(f"{name} must be nonnegative, got {value}")
            object.__setattr__(self, name, value)
        noise = float(self.noise)
        _check_finite("noise", noise)
        if noise <= 0:
            raise InvalidInstance(f"noise must be positive, got {noise}")
        object.__setattr__(self, "noise", noise)

    def scaled(self, k: float) -> "ChannelInstance":
        """All gains and the noise multiplied by ``k``."""
        return ChannelInstance(*(k * getattr(self, n) for n in GAIN_NAMES), noise=k * self.noise)

    def as_dict(self) -> dict:
        d = {n: getattr(self, n) for n in GAIN_NAMES}
        d["noise"] = self.noise
        return d


@dataclass(frozen=True)
class PowerBudget:
    pmax1: float
    pmax2: float

    def __post_init__(self):
        for name in ("pmax1", "pmax2"):
            value = float(getattr(self, name))
            _check_finite(name, value)
            if value <= 0:
                raise InvalidInstance(f"{name} must be positive, got {value}")
            object.__setattr__(self, name, value)


@dataclass(frozen=True)
class QosRequirement:
    """Minimum rate ``beta`` at destination 2 and its SINR form ``gamma``."""

    beta: float
    gamma: float

    @classmethod
    def from_beta(cls, beta: float) -> "QosRequirement":
        beta = float(beta)
        if not math.isfinite(beta) or beta < 0:
            raise InvalidInstance(f"beta must be finite and nonnegative, got {beta}")
        return cls(beta, 2.0**beta - 1.0)

    @classmethod
    def from_gamma(cls, gamma: float) -> "QosRequirement":
        gamma = float(gamma)
        if not math.isfinite(gamma) or gamma < 0:
            raise InvalidInstance(f"gamma must be finite and nonnegative, got {gamma}")
        return cls(math.log2(1.0 + gamma), gamma)


class SicCase(enum.Enum):
    BLOCK_ABOVE = "7a"  # P1 > omega blocks SIC
    BLOCK_ALWAYS = "7b"
    BLOCK_BELOW = "7c"  # P1 < omega blocks SIC
    UNBLOCKABLE = "7d"


@dataclass(frozen=True)
class SicRegime:
    case: SicCase
    omega: Optional[float]
    a_dd: float
    b_dd: float

    def blocks(self, p1):
        """Strict SIC-blocking inequality ``P1 * B'' > A''``."""
        return p1 * self.b_dd > self.a_dd

    def blocks_closed(self, p1):
        """Closure of :meth:`blocks`; optimisation treats the boundary as blocked."""
        if self.case is SicCase.UNBLOCKABLE:
            return np.zeros_like(p1, dtype=bool) if np.ndim(p1) else False
        return p1 * self.b_dd >= self.a_dd

    def blocked_range(self, pmax1: float) -> Optional[Interval]:
        """Closed P1 range within ``[0, pmax1]`` where the eavesdropper cannot use SIC."""
        if self.case is SicCase.BLOCK_ALWAYS:
            return Interval(0.0, pmax1)
        if self.case is SicCase.BLOCK_ABOVE:
            return Interval(self.omega, pmax1) if self.omega <= pmax1 else None
        if self.case is SicCase.BLOCK_BELOW:
            return Interval(0.0, min(self.omega, pmax1))
        return None

    def open_range(self, pmax1: float) -> Optional[Interval]:
        """Closed P1 range within ``[0, pmax1]`` where SIC remains available."""
        if self.case is SicCase.UNBLOCKABLE:
            return Interval(0.0, pmax1)
        if self.case is SicCase.BLOCK_ABOVE:
            return Interval(0.0, min(self.omega, pmax1))
        if self.case is SicCase.BLOCK_BELOW:
            return Interval(self.omega, pmax1) if self.omega < pmax1 else None
        return None


def classify_sic_regime(ch: ChannelInstance) -> SicRegime:
    a_dd = ch.noise * (ch.g2e - ch.g22)
    b_dd = ch.g22 * ch.g1e - ch.g12 * ch.g2e
    # zero signs fall back to the primitive inequality P1*B'' > A''
    if a_dd >= 0 and b_dd <= 0:
        return SicRegime(SicCase.UNBLOCKABLE, None, a_dd, b_dd)
    if a_dd <= 0 and b_dd >= 0:
        return SicRegime(SicCase.BLOCK_ALWAYS, None, a_dd, b_dd)
    if a_dd > 0:
        return SicRegime(SicCase.BLOCK_ABOVE, a_dd / b_dd, a_dd, b_dd)
    return SicRegime(SicCase.BLOCK_BELOW, a_dd / b_dd, a_dd, b_dd)


def sinr_u1(ch: ChannelInstance, p1, p2):
    return p1 * ch.g11 / (p2 * ch.g21 + ch.noise)


def sinr_u2(ch: ChannelInstance, p1, p2):
    return p2 * ch.g22 / (p1 * ch.g12 + ch.noise)


def rate_u1(ch: ChannelInstance, p1, p2):
    return np.log2(1.0 + sinr_u1(ch, p1, p2))


def rate_u2(ch: ChannelInstance, p1, p2):
    return np.log2(1.0 + sinr_u2(ch, p1, p2))


def eavesdropper_sinr(ch: ChannelInstance, p1, p2, sic_blocked):
    if isinstance(sic_blocked, (bool, np.bool_)):
        interference = p2 * ch.g2e if sic_blocked else 0.0
    else:
        interference = np.where(sic_blocked, p2 * ch.g2e, 0.0)
    return p1 * ch.g1e / (interference + ch.noise)


def eavesdropper_rate(ch: ChannelInstance, p1, p2, sic_blocked):
    return np.log2(1.0 + eavesdropper_sinr(ch, p1, p2, sic_blocked))


def secrecy_rate(ch: ChannelInstance, p1, p2, sic_blocked):
    """Signed secrecy rate; negative values are kept for diagnostics."""
    return rate_u1(ch, p1, p2) - eavesdropper_rate(ch, p1, p2, sic_blocked)


def clamped_secrecy_rate(ch: ChannelInstance, p1, p2, sic_blocked):
    return np.maximum(0.0, secrecy_rate(ch, p1, p2, sic_blocked))


def qos_satisfied(ch: ChannelInstance, p1, p2, gamma: float, tol: float = DEFAULT_TOL):
    return sinr_u2(ch, p1, p2) >= gamma * (1.0 - tol)


class Branch(enum.Enum):
    """Which subproblem produced an allocation."""

    HIGH = "high"  # P1 pinned at its cap, P2 free above the QoS knee
    LOW = "low"  # QoS-tight curve, P1 driven by P2
    OPEN_HIGH = "open-high"  # same two shapes, eavesdropper can run SIC
    OPEN_LOW = "open-low"
    QOS_ONLY = "qos-only"  # user 1 off, user 2 at its bare QoS power
    EGOISTIC_BLOCKED = "egoistic"
    EGOISTIC_OPEN = "egoistic-open"
    EGOISTIC_OFF = "egoistic-off"
    SINGLE_USER = "single-user"


@dataclass(frozen=True)
class PowerAllocation:
    p1: float
    p2: float
    secrecy: float
    qos_sinr: float
    sic_blocked: bool
    branch: Branch

    @property
    def total_power(self) -> float:
        return self.p1 + self.p2


def make_allocation(ch: ChannelInstance, p1: float, p2: float, sic_blocked: bool, branch: Branch) -> PowerAllocation:
    """Build an allocation whose rates are evaluated at the given point."""
    p1, p2 = float(p1), float(p2)
    return PowerAllocation(
        p1=p1,
        p2=p2,
        secrecy=float(clamped_secrecy_rate(ch, p1, p2, sic_blocked)),
        qos_sinr=float(sinr_u2(ch, p1, p2)),
        sic_blocked=bool(sic_blocked),
        branch=branch,
    )
