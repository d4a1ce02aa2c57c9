import math

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from wiretap_ic.errors import DenominatorNonPositive, EmptyInterval
from wiretap_ic.fractional import (
    BilinearRatioObjective,
    Interval,
    derivative_quadratic,
    maximize_on_interval,
    real_roots,
)

DECREASING = BilinearRatioObjective(2, 1, 1, 2, 1, 1, 3, 2)
MOBIUS = BilinearRatioObjective(2, 1, 0, 1, 1, 1, 0, 1)
INTERIOR = BilinearRatioObjective(2, 0.5, 0, 1, 1, 1, 0.1, 1)


class TestDerivativeQuadratic:
    def test_expansion(self):
        assert derivative_quadratic(DECREASING) == (-5, -4, 0)

    def test_constant(self):
        assert derivative_quadratic(BilinearRatioObjective(0, 2, 0, 3, 0, 1, 0, 5)) == (0, 0, 0)

    def test_mobius(self):
        assert derivative_quadratic(MOBIUS) == (0, 0, 1)


class TestRealRoots:
    def test_quadratic(self):
        assert real_roots(1, -3, 2) == pytest.approx([1, 2])

    def test_linear_and_constant(self):
        assert real_roots(0, 2, -4) == [2.0]
        assert real_roots(0, 0, 3) == []
        assert real_roots(0, 0, 0) == []

    def test_no_real_roots(self):
        assert real_roots(1, 0, 1) == []

    def test_cancellation(self):
        # q1^2 >> 4 q2 q0: the small root must keep full precision
        small, big = real_roots(1.0, -1e8, 1.0)
        assert small == pytest.approx(1e-8, rel=1e-12)
        assert big == pytest.approx(1e8, rel=1e-12)

    def test_tiny_leading_coefficient_is_linear(self):
        assert real_roots(1e-20, 2.0, -4.0) == [2.0]


class TestMaximize:
    def test_monotone_boundary(self):
        r = maximize_on_interval(MOBIUS, Interval(0, 3))
        assert (r.argmax, r.value) == (3, pytest.approx(1.75))

    def test_decreasing(self):
        r = maximize_on_interval(DECREASING, Interval(0, 10))
        assert (r.argmax, r.value) == (0, 1.0)
        grid = np.linspace(0, 10, 10**6)
        assert r.value >= DECREASING(grid).max()

    def test_interior_root(self):
        r = maximize_on_interval(INTERIOR, Interval(0, 10))
        root = (-0.1 + math.sqrt(0.01 + 4 * 0.2 * 1.45)) / (2 * 0.2)
        assert r.argmax == pytest.approx(root, rel=1e-12)
        assert r.argmax == pytest.approx(2.4542, abs=1e-3)
        assert r.value == pytest.approx(1.2572, abs=1e-3)
        assert r.value == max(v for _, v in r.candidates_examined)

    def test_constant_returns_lo(self):
        r = maximize_on_interval(BilinearRatioObjective(0, 2, 0, 3, 0, 1, 0, 5), Interval(1, 4))
        assert r.argmax == 1

    def test_tie_goes_to_smaller_point(self):
        # symmetric about P = 1 on [0, 2]: f(0) == f(2)
        obj = BilinearRatioObjective(-1, 2, 1, 0, 0, 1, 0, 1)
        r = maximize_on_interval(obj, Interval(0, 2))
        assert r.argmax == pytest.approx(1.0)  # interior max beats the equal endpoints
        flat_ends = BilinearRatioObjective(1, -1, 1, -1, 0, 1, 0, 1)  # (P-1)^2, min at 1
        assert maximize_on_interval(flat_ends, Interval(0, 2)).argmax == 0

    def test_single_point(self):
        r = maximize_on_interval(MOBIUS, Interval(2, 2))
        assert r.argmax == 2 and len(r.candidates_examined) == 1

    def test_errors(self):
        with pytest.raises(EmptyInterval):
            maximize_on_interval(MOBIUS, Interval(3, 1))
        with pytest.raises(EmptyInterval):
            maximize_on_interval(MOBIUS, Interval.empty())
        with pytest.raises(DenominatorNonPositive):
            maximize_on_interval(BilinearRatioObjective(1, 1, 0, 1, 1, -1, 0, 1), Interval(0, 2))


# exact zeros exercise the degenerate shapes; otherwise stay clear of subnormal magnitudes
coef = st.one_of(st.just(0.0), st.floats(1e-3, 5), st.floats(-5, -1e-3))
pos = st.floats(0.05, 5)


@st.composite
def objectives(draw):
    """Random objectives whose denominator factors stay positive on [0, 10]."""
    d1, e1 = draw(coef), draw(coef)
    d0 = draw(pos) + max(0.0, -10 * d1)
    e0 = draw(pos) + max(0.0, -10 * e1)
    return BilinearRatioObjective(draw(coef), draw(coef), draw(coef), draw(coef), d1, d0, e1, e0)


def lipschitz(obj, lo, hi):
    """Crude bound on |f'| over [lo, hi] from interval arithmetic on the factors."""
    def mag(s, c):
        return max(abs(s * lo + c), abs(s * hi + c))

    def low(s, c):
        return min(s * lo + c, s * hi + c)

    den = low(obj.d1, obj.d0) * low(obj.e1, obj.e0)
    num_mag = mag(obj.n1, obj.n0) * mag(obj.m1, obj.m0)
    dnum = abs(obj.n1) * mag(obj.m1, obj.m0) + abs(obj.m1) * mag(obj.n1, obj.n0)
    dden = abs(obj.d1) * mag(obj.e1, obj.e0) + abs(obj.e1) * mag(obj.d1, obj.d0)
    return dnum / den + num_mag * dden / den**2


@settings(max_examples=10_000)
@given(objectives())
def test_dominates_dense_grid(obj):
    r = maximize_on_interval(obj, Interval(0.0, 10.0))
    grid = np.linspace(0.0, 10.0, 10**5)
    eps = lipschitz(obj, 0.0, 10.0) * 10.0 / (10**5 - 1)
    assert r.value >= obj(grid).max() - eps - 1e-12 * abs(r.value)


@settings(max_examples=300)
@given(objectives(), st.integers(0, 2**32 - 1))
def test_quadratic_sign_matches_finite_differences(obj, seed):
    q2, q1, q0 = derivative_quadratic(obj)
    roots = real_roots(q2, q1, q0)
    pts = np.random.default_rng(seed).uniform(0.01, 9.99, 100)
    h = 1e-6
    for p in pts:
        if any(abs(p - r) < 1e-6 for r in roots):
            continue
        q = q2 * p * p + q1 * p + q0
        fd = (obj(p + h) - obj(p - h)) / (2 * h)
        # skip points where either side is buried in rounding noise
        scale = max(abs(q2) * p * p, abs(q1) * p, abs(q0))
        if abs(q) < 1e-6 * scale or abs(fd) < 1e-7 * max(1.0, abs(obj(p))):
            continue
        assert np.sign(q) == np.sign(fd)


@given(objectives(), st.floats(0, 10), st.floats(0, 10))
def test_argmax_is_endpoint_or_root(obj, a, b):
    lo, hi = min(a, b), max(a, b)
    r = maximize_on_interval(obj, Interval(lo, hi))
    allowed = [lo, hi, *r.stationary_roots]
    assert any(r.argmax == x for x in allowed)
    assert r.value == obj(r.argmax)
    assert all(r.value >= v for _, v in r.candidates_examined)
