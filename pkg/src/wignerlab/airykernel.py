"""Airy kernel and the limiting edge correlation functions.

At the hermitian edge the k-point correlation is the determinant of the
kernel matrix K(theta_i, theta_j).  At the real-symmetric edge it is the
square root of the determinant of a 2k x 2k matrix of 2 x 2 blocks built
from the kernel, its derivative DK(y,z) = -d/dz K(y,z), the antiderivative
JK(y,z) = -int_y^inf K(t,z) dt - sgn(y-z)/2, and cumulative Airy integrals.
The diagonal of the one-point block reduces to the scalar edge density, the
anchor for validating the block assembly.
"""

from __future__ import annotations

import math

import numpy as np

from .airyfun import airy, airy_ai, airy_cumulative
from .errors import DomainError, NumericError
from .linalg import det_dense
from .quadrature import panel_points

_DOMAIN_MIN = -200.0
_DOMAIN_MAX = 190.0
# below this separation the integrable form loses digits to cancellation
_DIAG_EPS = 1e-4
# Ai(16) ~ 2e-17 and the kernel integrands involve products of two Airy
# factors, so integration beyond argument 17 adds nothing at 1e-12
_TAIL_EDGE = 17.0
# block entries need the antiderivative quadratures to start this far left
_BLOCK_MIN = -40.0
_NEGATIVE_TOL = 1e-10


def _check_domain(*values: float) -> None:
    for v in values:
        if not _DOMAIN_MIN <= v <= _DOMAIN_MAX:
            raise DomainError(
                f"kernel argument {v} outside [{_DOMAIN_MIN}, {_DOMAIN_MAX}]")


def kernel_diagonal(x):
    """K(x, x) = Ai'(x)^2 - x Ai(x)^2, the scalar edge density (vectorized)."""
    ai, aip = airy(x)
    return aip * aip - np.asarray(x, dtype=float) * ai * ai


def airy_kernel(x: float, y: float) -> float:
    """Integrable-form kernel; near the diagonal uses the midpoint rule.

    The midpoint evaluation of the diagonal form is second-order accurate
    in the separation, so the switch at separation 1e-4 costs < 1e-8.
    """
    _check_domain(x, y)
    if abs(x - y) <= _DIAG_EPS:
        return float(kernel_diagonal(0.5 * (x + y)))
    aix, aipx = airy(x)
    aiy, aipy = airy(y)
    return (aix * aipy - aipx * aiy) / (x - y)


def airy_kernel_quadrature(x: float, y: float) -> float:
    """The same kernel as int_0^inf Ai(x+t) Ai(y+t) dt; cross-check route."""
    _check_domain(x, y)
    top = max(1.0, _TAIL_EDGE - min(x, y))
    t, w = panel_points(0.0, top)
    return float(np.sum(w * airy_ai(x + t) * airy_ai(y + t)))


def linear_statistic_limit(t: float, lower: float = -200.0,
                           upper: float = 20.0) -> float:
    """2 int e^{t theta} K(theta, theta) d theta, the large-n mean of the
    two-sided truncated exponential statistic.

    The integrand decays only like e^{t theta} sqrt(-theta) to the left, so
    small t needs the full default domain; at t = 0.05 truncating at -50
    already loses nine percent.
    """
    if not 0.0 < t <= 2.0:
        raise DomainError("t must lie in (0, 2] for the default domain")
    _check_domain(lower, upper)
    x, w = panel_points(lower, upper)
    return 2.0 * float(np.sum(w * np.exp(t * x) * kernel_diagonal(x)))


def _dk(y: float, z: float) -> float:
    """-d/dz K(y,z), computed as -int_0^inf Ai(y+t) Ai'(z+t) dt."""
    top = max(1.0, _TAIL_EDGE - min(y, z))
    t, w = panel_points(0.0, top)
    ai_z, aip_z = airy(z + t)
    return -float(np.sum(w * airy_ai(y + t) * aip_z))


def _jk(y: float, z: float) -> float:
    """-int_y^inf K(t,z) dt - sgn(y-z)/2, with sgn(0) = 0."""
    top = max(y + 1.0, _TAIL_EDGE)
    t, w = panel_points(y, top)
    ai_t, aip_t = airy(t)
    ai_z, aip_z = airy(z)
    diff = t - z
    near = np.abs(diff) <= _DIAG_EPS
    with np.errstate(divide="ignore", invalid="ignore"):
        vals = (ai_t * aip_z - aip_t * ai_z) / diff
    if np.any(near):
        vals = np.where(near, kernel_diagonal(0.5 * (t + z)), vals)
    integral = float(np.sum(w * vals))
    sgn = 0.0 if y == z else math.copysign(1.0, y - z)
    return -integral - 0.5 * sgn


def goe_block(y: float, z: float) -> np.ndarray:
    """The 2 x 2 block pairing edge points y and z in the real-symmetric limit."""
    if not (_BLOCK_MIN <= y <= _DOMAIN_MAX and _BLOCK_MIN <= z <= _DOMAIN_MAX):
        raise DomainError(
            f"block arguments must lie in [{_BLOCK_MIN}, {_DOMAIN_MAX}]")
    ai_y = airy_ai(y)
    ai_z = airy_ai(z)
    cum_y = airy_cumulative(y)
    cum_z = airy_cumulative(z)
    s_yz = airy_kernel(y, z) + 0.5 * ai_y * cum_z
    d_yz = -0.5 * ai_y * ai_z + _dk(y, z)
    i_yz = _jk(y, z) + 0.5 * (cum_y - cum_z) + 0.5 * (1.0 - cum_z) * cum_z
    s_zy = airy_kernel(z, y) + 0.5 * ai_z * cum_y
    return np.array([[s_yz, d_yz], [i_yz, s_zy]])


def edge_correlation(beta: int, points) -> float:
    """Limiting k-point correlation at the spectral edge, k <= 6.

    beta = 2: determinant of the kernel matrix.  beta = 1: square root of
    the determinant of the assembled 2k x 2k block matrix.  Values within
    1e-10 below zero are clamped to 0; anything lower raises.
    """
    pts = [float(p) for p in points]
    k = len(pts)
    if not 1 <= k <= 6:
        raise DomainError("point count must lie in 1..6")
    if beta == 2:
        mat = np.empty((k, k))
        for i in range(k):
            for j in range(i, k):
                mat[i, j] = mat[j, i] = airy_kernel(pts[i], pts[j])
        value = det_dense(mat)
    elif beta == 1:
        mat = np.empty((2 * k, 2 * k))
        for i in range(k):
            for j in range(k):
                mat[2 * i:2 * i + 2, 2 * j:2 * j + 2] = goe_block(pts[i], pts[j])
        det = det_dense(mat)
        if det < -_NEGATIVE_TOL:
            raise NumericError(f"block determinant {det} is negative at {pts}")
        value = math.sqrt(max(det, 0.0))
    else:
        raise DomainError("beta must be 1 or 2")
    if value < -_NEGATIVE_TOL:
        raise NumericError(f"correlation {value} is negative at {pts}")
    return max(value, 0.0)
