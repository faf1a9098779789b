import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from vortex_wigner.specfun import laguerre_assoc, log_norm_factor, quad_nodes


def series(n, a, x):
    """Exact rational value of the explicit Laguerre sum."""
    x = Fraction(x)
    return sum(Fraction((-1) ** k * math.comb(n + a, n - k)) * x**k / math.factorial(k)
               for k in range(n + 1))


def term_scale(n, a, x):
    return sum(math.comb(n + a, n - k) * x**k / math.factorial(k) for k in range(n + 1))


def test_laguerre_examples():
    assert laguerre_assoc(0, 5, 17.0) == 1.0
    assert laguerre_assoc(1, 2, 3.0) == 0.0
    assert laguerre_assoc(2, 1, 1.0) == pytest.approx(0.5, rel=1e-15)


def test_laguerre_vectorized():
    x = np.linspace(0, 10, 7)
    np.testing.assert_allclose(laguerre_assoc(3, 2, x), [laguerre_assoc(3, 2, v) for v in x])


def test_laguerre_recurrence_vs_series_random():
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(400):
        n, a = int(rng.integers(0, 31)), int(rng.integers(0, 31))
        x = float(rng.uniform(0, 100))
        exact = float(series(n, a, x))
        worst = max(worst, abs(laguerre_assoc(n, a, x) - exact) / abs(exact))
    assert worst <= 1e-10


@given(st.integers(0, 30), st.integers(0, 30), st.floats(0, 100))
def test_laguerre_recurrence_vs_series_property(n, a, x):
    # near a root relative error is meaningless; bound by the term magnitude
    exact = float(series(n, a, x))
    err = abs(laguerre_assoc(n, a, x) - exact)
    assert err <= 1e-10 * abs(exact) + 1e-14 * term_scale(n, a, x)


def test_log_norm_factor_examples():
    assert log_norm_factor(0, 0) == 0.0
    assert log_norm_factor(1, 2) == pytest.approx(math.log(1 / 6), rel=1e-15)
    assert log_norm_factor(5, 10) == pytest.approx(
        math.log(math.factorial(5) / math.factorial(15)), rel=1e-14)


@given(st.integers(0, 20), st.integers(0, 20))
def test_log_norm_factor_exact(n, a):
    if n + a > 20:
        return
    exact = Fraction(math.factorial(n), math.factorial(n + a))
    assert math.exp(log_norm_factor(n, a)) == pytest.approx(float(exact), rel=1e-14)


def test_log_norm_factor_large_ell():
    assert np.isfinite(log_norm_factor(3, 100))


def test_quad_two_point_rules():
    h = quad_nodes("hermite", 2)
    np.testing.assert_allclose(sorted(h.nodes), [-1 / math.sqrt(2), 1 / math.sqrt(2)], rtol=1e-15)
    np.testing.assert_allclose(h.weights, [math.sqrt(math.pi) / 2] * 2, rtol=1e-15)
    g = quad_nodes("legendre", 2)
    np.testing.assert_allclose(sorted(g.nodes), [-1 / math.sqrt(3), 1 / math.sqrt(3)], rtol=1e-15)
    np.testing.assert_allclose(g.weights, [1.0, 1.0], rtol=1e-15)


def gaussian_moment(k):
    return 0.0 if k % 2 else math.gamma((k + 1) / 2)


def test_hermite_order48_fourth_moment():
    h = quad_nodes("hermite", 48)
    assert h.integrate(lambda x: x**4) == pytest.approx(0.75 * math.sqrt(math.pi), rel=1e-12)


@pytest.mark.parametrize("order", [2, 3, 5, 8, 11, 16, 48])
def test_hermite_moments_exact(order):
    rule = quad_nodes("hermite", order)
    for k in range(0, min(2 * order - 1, 20) + 1):
        got = rule.integrate(lambda x: x**k)
        exact = gaussian_moment(k)
        assert abs(got - exact) <= 1e-12 * max(exact, math.gamma((k + 1) / 2))


@pytest.mark.parametrize("alpha", [0.0, 0.5, 3.0, 40.5])
def test_laguerre_rule_moments(alpha):
    rule = quad_nodes("laguerre", 24, alpha)
    for k in range(0, 12):
        assert rule.integrate(lambda x: x**k) == pytest.approx(math.gamma(alpha + k + 1), rel=1e-11)


def test_quadrature_order_doubling_converges():
    f = lambda x: x**2 * np.cos(3 * x + 0.4)  # noqa: E731
    a = quad_nodes("hermite", 40).integrate(f)
    b = quad_nodes("hermite", 80).integrate(f)
    assert abs(a - b) < 1e-10


def test_quad_nodes_errors_and_immutability():
    with pytest.raises(ValueError):
        quad_nodes("hermite", 1)
    with pytest.raises(ValueError):
        quad_nodes("chebyshev", 4)
    rule = quad_nodes("legendre", 4)
    with pytest.raises(ValueError):
        rule.nodes[0] = 0.0
    assert quad_nodes("legendre", 4) is rule
