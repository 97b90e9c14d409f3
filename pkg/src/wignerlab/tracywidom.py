"""Limiting distribution functions of the rescaled largest eigenvalue.

Built from the decaying Painleve II branch q:

    F2(s) = exp(-int_s^inf (x - s) q^2(x) dx)
    F1(s) = exp(-1/2 int_s^inf [q(x) + (x - s) q^2(x)] dx)

The table stores both functions with their exact derivatives
F2' = F2 * int_s^inf q^2 and F1' = F1 * (q + int_s^inf q^2)/2, so
evaluation between nodes is cubic Hermite interpolation with true slopes.
Integrals beyond the right table edge use q ~ Ai, accurate there to far
below double precision.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .airyfun import airy_ai, airy_cumulative
from .errors import ConfigurationError, DomainError
from .painleve import SMAX, SMIN, PainleveTable, painleve_q
from .quadrature import panel_points

_MAX_STEP = 0.02
# Ai^2 factors are below 1e-130 past this point
_TAIL_TOP = 30.0


@dataclass(frozen=True)
class TWTable:
    """Distribution values on a uniform grid plus what interpolation needs."""

    s: np.ndarray
    q: np.ndarray
    f1: np.ndarray
    f2: np.ndarray
    df1: np.ndarray
    df2: np.ndarray
    int_q: np.ndarray   # int_s^{table right edge} q, for consistency checks
    tail_q: float       # int_{right edge}^inf q
    tail_q2: float
    tail_xq2: float


def _tail_constants(edge: float):
    """Integrals of q, q^2, x q^2 beyond the table using q ~ Ai."""
    t0 = 1.0 - airy_cumulative(edge)
    x, w = panel_points(edge, _TAIL_TOP)
    ai = airy_ai(x)
    t2 = float(np.sum(w * ai * ai))
    t1 = float(np.sum(w * x * ai * ai))
    return t0, t1, t2


def tw_table(smin: float = SMIN, smax: float = SMAX, step: float = 0.02,
             tol: float = 1e-10) -> TWTable:
    """Build the distribution table on a uniform grid of the given step."""
    if not SMIN <= smin < smax <= SMAX:
        raise ConfigurationError(
            f"table range must satisfy {SMIN} <= smin < smax <= {SMAX}")
    if not 0.0 < step <= _MAX_STEP + 1e-12:
        raise ConfigurationError(f"grid step must lie in (0, {_MAX_STEP}]")
    npts = int(round((smax - smin) / step)) + 1
    grid = smin + step * np.arange(npts)
    grid[-1] = smax
    pt = painleve_q(grid, tol=tol)
    return _assemble(pt, smax)


def _assemble(pt: PainleveTable, edge: float) -> TWTable:
    t0, t1, t2 = _tail_constants(edge)
    s = pt.s
    # int_s^inf (x - s) q^2 = (int_s^edge x q^2 + tail) - s (int_s^edge q^2 + tail)
    g2 = (pt.int_xq2 + t1) - s * (pt.int_q2 + t2)
    iq = pt.int_q + t0
    iq2 = pt.int_q2 + t2
    # near the edge the true exponents fall below eps and cancellation can
    # leave g2 at -1e-14; the distribution itself never exceeds 1
    f2 = np.minimum(np.exp(-g2), 1.0)
    f1 = np.minimum(np.exp(-0.5 * iq - 0.5 * g2), 1.0)
    df2 = f2 * iq2
    df1 = f1 * 0.5 * (pt.q + iq2)
    return TWTable(s=s, q=pt.q, f1=f1, f2=f2, df1=df1, df2=df2,
                   int_q=pt.int_q, tail_q=t0, tail_q2=t2, tail_xq2=t1)


_DEFAULT: TWTable | None = None


def default_table() -> TWTable:
    """The shared immutable table on the full default grid."""
    global _DEFAULT
    if _DEFAULT is None:
        _DEFAULT = tw_table()
    return _DEFAULT


def tw_cdf(beta: int, s, table: TWTable | None = None, with_flag: bool = False):
    """Distribution value(s) at s; outside the table the value clamps.

    Returns the clamp mask as well when ``with_flag`` is set.  beta = 2 is
    the hermitian symmetry class, beta = 1 the real-symmetric one.
    """
    if beta not in (1, 2):
        raise DomainError("beta must be 1 or 2")
    if table is None:
        table = default_table()
    f = table.f2 if beta == 2 else table.f1
    df = table.df2 if beta == 2 else table.df1
    x = np.asarray(s, dtype=float)
    scalar = x.ndim == 0
    x1 = np.atleast_1d(x)

    lo = table.s[0]
    hi = table.s[-1]
    below = x1 < lo
    above = x1 > hi
    inside = np.clip(x1, lo, hi)
    idx = np.clip(np.searchsorted(table.s, inside, side="right") - 1,
                  0, table.s.size - 2)
    s0 = table.s[idx]
    h = table.s[idx + 1] - s0
    t = (inside - s0) / h
    h00 = (1.0 + 2.0 * t) * (1.0 - t) ** 2
    h10 = t * (1.0 - t) ** 2
    h01 = t * t * (3.0 - 2.0 * t)
    h11 = t * t * (t - 1.0)
    val = (h00 * f[idx] + h * h10 * df[idx]
           + h01 * f[idx + 1] + h * h11 * df[idx + 1])
    # Hermite overshoot near the flat tail can leave 1 by an ulp
    np.clip(val, 0.0, 1.0, out=val)
    val[below] = 0.0
    val[above] = 1.0
    flag = below | above
    if scalar:
        val = float(val[0])
        flag = bool(flag[0])
    if with_flag:
        return val, flag
    return val
