"""Harmonic-oscillator eigenfunctions and the finite-n GUE spectral density.

psi_ell is evaluated by the orthonormal three-term recurrence

    psi_{ell+1}(x) = sqrt(2/(ell+1)) x psi_ell(x) - sqrt(ell/(ell+1)) psi_{ell-1}(x)

seeded by psi_0 = pi^{-1/4} exp(-x^2/2).  The Gaussian seed underflows long
before the recurrence has grown the polynomial part back to order one, so
the pair is carried as (mantissa, log scale) per evaluation point and
renormalized whenever the mantissa leaves [1e-100, 1e100].
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError

_MAX_ELL = 10 ** 6
_RENORM_HI = 1e100
_RENORM_LO = 1e-100


def _term(mantissa: np.ndarray, logs: np.ndarray) -> np.ndarray:
    """mantissa^2 * exp(2 logs), combined in log space to dodge overflow."""
    with np.errstate(divide="ignore", under="ignore"):
        return np.exp(2.0 * (logs + np.log(np.abs(mantissa))))


def _scan(x: np.ndarray, lmax: int, accumulate: bool):
    """Run the recurrence up to psi_lmax; optionally sum psi_ell^2, ell <= lmax."""
    with np.errstate(under="ignore"):
        prev = np.zeros_like(x)
        cur = np.full_like(x, math.pi ** -0.25)
        logs = -0.5 * x * x
        acc = _term(cur, logs) if accumulate else None
        for ell in range(lmax):
            a = math.sqrt(2.0 / (ell + 1))
            b = math.sqrt(ell / (ell + 1.0))
            prev, cur = cur, a * x * cur - b * prev
            mag = np.abs(cur)
            big = mag > _RENORM_HI
            small = (mag < _RENORM_LO) & (mag > 0.0)
            if np.any(big) or np.any(small):
                factor = np.where(big, _RENORM_LO, np.where(small, _RENORM_HI, 1.0))
                prev = prev * factor
                cur = cur * factor
                logs = logs - np.log(factor)
            if accumulate:
                acc = acc + _term(cur, logs)
    return cur, logs, acc


def hermite_psi(ell: int, x):
    """Normalized oscillator eigenfunction psi_ell at x (scalar or array)."""
    if not 0 <= ell <= _MAX_ELL:
        raise DomainError(f"ell must lie in 0..{_MAX_ELL}")
    xs = np.asarray(x, dtype=float)
    cur, logs, _ = _scan(np.atleast_1d(xs), ell, accumulate=False)
    with np.errstate(divide="ignore", under="ignore"):
        val = np.sign(cur) * np.exp(logs + np.log(np.abs(cur)))
    if xs.ndim == 0:
        return float(val[0])
    return val


def gue_finite_density(n: int, x):
    """One-point density rho_{n,2,1}(x) = sqrt(2n) sum_{ell<n} psi_ell(sqrt(2n) x)^2.

    Integrates to n over the line; rho/n approaches the semicircle
    (2/pi) sqrt(1 - x^2) on [-1, 1] as n grows.
    """
    if n < 1:
        raise DomainError("n must be >= 1")
    xs = np.asarray(x, dtype=float)
    root = math.sqrt(2.0 * n)
    _, _, acc = _scan(np.atleast_1d(xs) * root, n - 1, accumulate=True)
    val = root * acc
    if xs.ndim == 0:
        return float(val[0])
    return val
