import math

import pytest
from hypothesis import settings, strategies as st

from wiretap_ic.model import ChannelInstance, PowerBudget

settings.register_profile("default", deadline=None, max_examples=200)
settings.load_profile("default")

gain = st.floats(min_value=1e-3, max_value=10.0, allow_nan=False, allow_infinity=False)
budget_value = st.floats(min_value=0.1, max_value=10.0)
gamma_value = st.sampled_from([0.0, 0.25, 0.5, 1.0, 2.0])


@st.composite
def channels(draw, noise=None):
    g = [draw(gain) for _ in range(6)]
    n = draw(st.floats(min_value=0.1, max_value=5.0)) if noise is None else noise
    return ChannelInstance(*g, noise=n)


@st.composite
def budgets(draw):
    return PowerBudget(draw(budget_value), draw(budget_value))


# worked instance shared by the solver, oracle and CLI tests
REFERENCE = ChannelInstance(g11=4, g21=1, g12=1, g22=4, g1e=1, g2e=1, noise=1)
REFERENCE_BUDGET = PowerBudget(2.0, 2.0)
# With P1 = 2 the blocked secrecy is log2((9 + P2) / (3 + P2)), decreasing in P2,
# so the optimum sits on the QoS knee P2 = (2 + 1) / 4.
REFERENCE_P2 = 0.75
REFERENCE_SECRECY = math.log2(9.75 / 3.75)
# 200-point grid: the first grid P2 at or above 0.75 is 150/199.
REFERENCE_ORACLE_P2 = 150 / 199
REFERENCE_ORACLE_SECRECY = math.log2((9 + 150 / 199) / (3 + 150 / 199))


@pytest.fixture
def reference():
    return REFERENCE, REFERENCE_BUDGET
