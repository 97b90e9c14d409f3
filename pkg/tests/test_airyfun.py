"""Airy evaluation against closed forms and an mpmath-frozen grid."""

import math

import numpy as np
import pytest

from wignerlab.airyfun import airy, airy_ai, airy_cumulative
from wignerlab.errors import DomainError

AI0 = 3.0 ** (-2.0 / 3.0) / math.gamma(2.0 / 3.0)
AIP0 = -(3.0 ** (-1.0 / 3.0)) / math.gamma(1.0 / 3.0)

def test_closed_forms_at_zero():
    ai, aip = airy(0.0)
    assert ai == pytest.approx(AI0, rel=1e-15)
    assert aip == pytest.approx(AIP0, rel=1e-15)


def test_matches_mpmath_spot_grid():
    mp = pytest.importorskip("mpmath")
    mp.mp.dps = 30
    xs = [-150.0, -50.0, -12.5, -4.0, -1.0, 0.0, 0.5, 2.0, 4.5, 7.0,
          12.0, 40.0, 103.0, 200.0]
    worst = 0.0
    for x in xs:
        ai, aip = airy(x)
        ref = float(mp.airyai(x))
        refp = float(mp.airyai(x, derivative=1))
        scale = max(abs(ref), abs(refp), 1e-300)
        worst = max(worst, abs(ai - ref) / max(abs(ref), 1e-300),
                    abs(aip - refp) / max(abs(refp), 1e-300))
    assert worst < 5e-12


def test_wronskian_identity():
    # Ai(x) Bi'(x) - Ai'(x) Bi(x) = 1/pi; here probed through the scaled
    # consistency Ai''(x) = x Ai(x) via central differences
    for x in (-30.0, -5.0, -1.0, 0.0, 1.5, 3.0, 8.0):
        h = 1e-4
        f = [airy_ai(x + d) for d in (-h, 0.0, h)]
        second = (f[0] - 2.0 * f[1] + f[2]) / (h * h)
        assert second == pytest.approx(x * f[1], abs=5e-7)


def test_vectorized_matches_scalar():
    xs = np.array([-20.0, -1.0, 0.0, 2.5, 30.0])
    ai, aip = airy(xs)
    for j, x in enumerate(xs):
        a, ap = airy(float(x))
        assert ai[j] == a and aip[j] == ap


def test_domain_guard():
    with pytest.raises(DomainError):
        airy(200.5)
    with pytest.raises(DomainError):
        airy_cumulative(-201.0)


def test_cumulative_anchor_and_limits():
    assert airy_cumulative(0.0) == pytest.approx(2.0 / 3.0, rel=1e-13)
    assert airy_cumulative(30.0) == pytest.approx(1.0, abs=1e-14)
    # the primitive oscillates below the first zero of Ai but converges to 0
    assert abs(airy_cumulative(-150.0)) < 0.2


def test_cumulative_derivative_is_ai():
    for y in (-3.0, -1.0, 0.5, 2.0, 5.0):
        h = 1e-5
        d = (airy_cumulative(y + h) - airy_cumulative(y - h)) / (2.0 * h)
        assert d == pytest.approx(airy_ai(y), abs=1e-9)
