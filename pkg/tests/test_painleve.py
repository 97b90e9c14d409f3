"""The decaying positive branch of q'' = s q + 2 q^3."""

import math

import numpy as np
import pytest

from wignerlab.airyfun import airy, airy_ai
from wignerlab.errors import DomainError
from wignerlab.painleve import (SMAX, SMIN, PainleveTable, left_asymptote,
                                painleve_q)

# branch values frozen from a 30-digit backward-integration pilot
Q_ORACLE = {
    0.0: 0.36706155154807837547,
    -2.0: 0.98339134972780473281,
    -6.0: 1.7310249588014576311,
    2.0: 0.034928149264595714929,
    6.0: 9.9476943602911314658e-6,
}


@pytest.fixture(scope="module")
def table():
    grid = np.array(sorted(Q_ORACLE) + [-9.0, -4.0, 4.0, SMAX])
    return painleve_q(grid)


def _at(table, s):
    idx = int(np.argmin(np.abs(table.s - s)))
    assert table.s[idx] == s
    return idx


def test_frozen_branch_values(table):
    for s, want in Q_ORACLE.items():
        got = float(table.q[_at(table, s)])
        assert got == pytest.approx(want, rel=5e-10)


def test_right_end_matches_airy(table):
    # only q(SMAX) = Ai(SMAX) is imposed; the slope agreeing too is an
    # independent consistency check of the computed branch
    i = _at(table, SMAX)
    ai, aip = airy(SMAX)
    assert float(table.q[i]) == pytest.approx(ai, rel=1e-12)
    assert float(table.qp[i]) == pytest.approx(aip, rel=1e-6)


def test_ode_residual_small():
    grid = np.linspace(-8.0, 6.0, 57)
    t = painleve_q(grid)
    h = 1e-4
    for s in (-7.0, -3.0, 0.0, 2.0):
        trio = painleve_q(np.array([s - h, s, s + h]))
        second = (trio.q[0] - 2.0 * trio.q[1] + trio.q[2]) / (h * h)
        rhs = s * trio.q[1] + 2.0 * trio.q[1] ** 3
        assert second == pytest.approx(rhs, abs=5e-5)
    assert np.all(t.q > 0.0)
    # decreasing from the left plateau to the Airy tail
    assert np.all(np.diff(t.q) < 0.0)


def test_two_resolutions_agree():
    grid = np.linspace(SMIN, SMAX, 91)
    fine = painleve_q(grid, tol=1e-10)
    coarse = painleve_q(grid, tol=1e-8)
    assert np.max(np.abs(fine.q - coarse.q)) < 1e-9
    assert np.max(np.abs(fine.int_q2 - coarse.int_q2)) < 1e-9


def test_left_asymptote_values_and_guard():
    # at -10 the relative correction to sqrt(-s/2) is 1/(8 s^3) to leading
    # order: about -1.25e-4
    ratio = left_asymptote(-10.0) / math.sqrt(5.0) - 1.0
    assert ratio == pytest.approx(-1.25e-4, rel=5e-3)
    assert left_asymptote(-6.0) == pytest.approx(Q_ORACLE[-6.0], rel=2e-6)
    with pytest.raises(DomainError):
        left_asymptote(-1.0)


def test_tail_follows_airy(table):
    for s in (4.0, 6.0):
        assert float(table.q[_at(table, s)]) == pytest.approx(
            airy_ai(s), rel=5e-5)


def test_cumulative_integrals(table):
    # int_q / int_q2 / int_xq2 vanish at SMAX and grow to the left
    i = _at(table, SMAX)
    assert abs(float(table.int_q[i])) < 1e-12
    assert abs(float(table.int_q2[i])) < 1e-12
    j = _at(table, -6.0)
    assert float(table.int_q[j]) > float(table.int_q[_at(table, 0.0)]) > 0.0
    assert float(table.int_q2[j]) > 0.0
    # d/ds int_s q dx = -q(s)
    h = 1e-5
    trio = painleve_q(np.array([-1.0 - h, -1.0, -1.0 + h]))
    deriv = (trio.int_q[2] - trio.int_q[0]) / (2.0 * h)
    assert deriv == pytest.approx(-trio.q[1], abs=1e-8)


def test_integral_against_scipy(table):
    integrate = pytest.importorskip("scipy.integrate")
    grid = np.linspace(-6.0, SMAX, 1401)
    t = painleve_q(grid)
    ref = integrate.simpson(t.q ** 2, x=grid)
    assert float(table.int_q2[_at(table, -6.0)]) == pytest.approx(ref,
                                                                  rel=1e-8)


def test_grid_guards():
    with pytest.raises(DomainError):
        painleve_q(np.array([SMIN - 0.5]))
    with pytest.raises(DomainError):
        painleve_q(np.array([SMAX + 0.5]))
    with pytest.raises(DomainError):
        painleve_q(np.empty(0))


def test_table_fields_aligned(table):
    assert isinstance(table, PainleveTable)
    n = table.s.size
    for field in (table.q, table.qp, table.int_q, table.int_q2,
                  table.int_xq2):
        assert field.shape == (n,)
