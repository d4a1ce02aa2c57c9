"""Single-user wiretap benchmark and secrecy energy efficiency."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInstance
from .model import Branch, PowerAllocation


@dataclass(frozen=True)
class SingleUserInstance:
    g_ud: float
    g_ue: float
    noise: float = 1.0
    pmax: float = 1.0

    def __post_init__(self):
        for name in ("g_ud", "g_ue", "noise", "pmax"):
            value = float(getattr(self, name))
            if not math.isfinite(value) or value < 0 or (value == 0 and name in ("noise", "pmax")):
                raise InvalidInstance(f"invalid {name}={value}")
            object.__setattr__(self, name, value)


def single_user_secrecy(su: SingleUserInstance, p: float) -> float:
    return float(max(0.0, np.log2((su.noise + p * su.g_ud) / (su.noise + p * su.g_ue))))


def solve_single_user(su: SingleUserInstance) -> PowerAllocation:
    """Full power when the data link beats the wiretap link, silence otherwise."""
    p = su.pmax if su.g_ud > su.g_ue else 0.0
    return PowerAllocation(p1=p, p2=0.0, secrecy=single_user_secrecy(su, p), qos_sinr=0.0,
                           sic_blocked=False, branch=Branch.SINGLE_USER)


def secrecy_energy_efficiency(secrecy: float, consumed_p1: float) -> float:
    """Secrecy rate per watt of user-1 power; zero power counts as zero efficiency."""
    if consumed_p1 <= 0:
        return 0.0
    return secrecy / consumed_p1


def total_power_efficiency(alloc: PowerAllocation) -> float:
    """Diagnostic variant dividing by p1 + p2; not used for the figure comparisons."""
    return secrecy_energy_efficiency(alloc.secrecy, alloc.total_power)
