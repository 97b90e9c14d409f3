"""Panel quadrature: exactness, splitting, and input validation."""

import math

import numpy as np
import pytest

from wignerlab.quadrature import integrate, panel_points


def test_polynomial_exactness():
    # 15-point Gauss-Legendre panels integrate degree-29 polynomials exactly
    val = integrate(lambda x: x ** 8, 0.0, 2.0)
    assert val == pytest.approx(2.0 ** 9 / 9.0, rel=1e-15)
    val = integrate(lambda x: 5 * x ** 29 - x ** 3, -1.0, 1.5)
    exact = 5 * (1.5 ** 30 - 1.0) / 30.0 - (1.5 ** 4 - 1.0) / 4.0
    assert val == pytest.approx(exact, rel=1e-14)


def test_transcendental_reference():
    # integrands receive the whole abscissa array at once
    assert integrate(np.sin, 0.0, math.pi) == pytest.approx(2.0, rel=1e-14)
    assert integrate(lambda x: np.exp(-x * x), -6.0, 6.0) == pytest.approx(
        math.sqrt(math.pi), rel=1e-14)


def test_panel_width_respected():
    x, w = panel_points(0.0, 1.0, max_width=0.25)
    assert x.size == w.size == 4 * 15
    assert x.min() > 0.0 and x.max() < 1.0
    assert float(np.sum(w)) == pytest.approx(1.0, rel=1e-15)


def test_degenerate_interval_is_empty():
    for a, b in ((2.0, 2.0), (1.0, 0.0)):
        x, w = panel_points(a, b)
        assert x.size == 0 and w.size == 0
        assert integrate(np.exp, a, b) == 0.0


def test_weights_positive():
    _, w = panel_points(-3.0, 7.0)
    assert np.all(w > 0.0)
