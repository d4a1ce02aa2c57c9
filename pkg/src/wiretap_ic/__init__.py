"""Joint power control for secrecy in a two-user wiretap interference channel."""
from .altruistic import SecrecyFeasibility, secrecy_feasibility, solve_altruistic
from .benchmark import SingleUserInstance, secrecy_energy_efficiency, solve_single_user
from .egoistic import egoistic_bounds, p2_equality, solve_egoistic
from .errors import ParseError, QosInfeasible
from .model import (
    Branch,
    ChannelInstance,
    PowerAllocation,
    PowerBudget,
    QosRequirement,
    SicCase,
    classify_sic_regime,
    clamped_secrecy_rate,
    secrecy_rate,
)

__all__ = [
    "Branch",
    "ChannelInstance",
    "ParseError",
    "PowerAllocation",
    "PowerBudget",
    "QosInfeasible",
    "QosRequirement",
    "SecrecyFeasibility",
    "SicCase",
    "SingleUserInstance",
    "clamped_secrecy_rate",
    "classify_sic_regime",
    "egoistic_bounds",
    "p2_equality",
    "secrecy_energy_efficiency",
    "secrecy_feasibility",
    "secrecy_rate",
    "solve_altruistic",
    "solve_egoistic",
    "solve_single_user",
]
