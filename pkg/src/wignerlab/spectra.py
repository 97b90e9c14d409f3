"""Spectra of sampled matrices and their edge rescalings.

Eigenvalues are kept sorted descending.  The edge zoom
theta_j = 2 n^{2/3} (lambda_j - 1) magnifies the neighborhood of the upper
spectral edge +1, where the largest eigenvalues have a nondegenerate limit;
tau_j does the same at the lower edge -1 after a sign flip.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .eigen import eigvals_herm, eigvals_sym
from .errors import DomainError, NumericError

# headroom below log(float max) so a sum of n guarded terms stays finite
_LOG_HUGE = 690.0


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues lambda_1 >= ... >= lambda_n of one sampled matrix."""

    eigenvalues: np.ndarray
    n: int

    def __post_init__(self) -> None:
        lam = np.asarray(self.eigenvalues, dtype=float)
        if self.n < 1 or lam.ndim != 1 or lam.size != self.n:
            raise DomainError("spectrum length must equal n >= 1")
        if not np.all(np.isfinite(lam)):
            raise DomainError("spectrum contains a nonfinite value")
        if np.any(np.diff(lam) > 0.0):
            raise DomainError("eigenvalues must be sorted nonincreasing")
        object.__setattr__(self, "eigenvalues", lam)


@dataclass(frozen=True)
class EdgeSample:
    """Edge-rescaled coordinates of the k extreme eigenvalues on each side.

    theta[j-1] = 2 n^{2/3} (lambda_j - 1) for the top k eigenvalues and
    tau[j-1] = -2 n^{2/3} (lambda_{n+1-j} + 1) for the bottom k, both
    nonincreasing.
    """

    theta: np.ndarray
    tau: np.ndarray
    k: int
    n: int


def eigenvalues(matrix: np.ndarray, label=None) -> Spectrum:
    """Full spectrum of an exactly symmetric or hermitian matrix.

    ``label`` (typically the sampling seed) is attached to any numeric
    error so a failing replica can be reproduced in isolation.
    """
    a = np.asarray(matrix)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DomainError("expected a square matrix")
    if np.iscomplexobj(a):
        if not np.array_equal(a, a.conj().T):
            raise DomainError("matrix is not exactly hermitian")
        solver = eigvals_herm
    else:
        if not np.array_equal(a, a.T):
            raise DomainError("matrix is not exactly symmetric")
        solver = eigvals_sym
    try:
        ascending = solver(a)
    except NumericError as exc:
        tag = "" if label is None else f" (replica {label!r})"
        raise NumericError(f"eigensolve did not converge{tag}: {exc}") from exc
    return Spectrum(eigenvalues=ascending[::-1].copy(), n=a.shape[0])


def rescale_edges(spectrum: Spectrum, k: int) -> EdgeSample:
    """Zoom on the k largest and k smallest eigenvalues."""
    if not 1 <= k <= spectrum.n:
        raise DomainError("k must lie in 1..n")
    lam = spectrum.eigenvalues
    scale = 2.0 * float(spectrum.n) ** (2.0 / 3.0)
    theta = scale * (lam[:k] - 1.0)
    # tau_1 comes from the smallest eigenvalue, so reverse the tail slice
    tau = -scale * (lam[spectrum.n - k:][::-1] + 1.0)
    return EdgeSample(theta=theta, tau=tau, k=k, n=spectrum.n)


def _matrix_trace_power(a: np.ndarray, p: int) -> float:
    if p == 1:
        return float(np.real(np.trace(a)))
    if p == 2:
        # Tr A^2 = sum |a_ij|^2 for (conjugate) symmetric A
        return float(np.real(np.sum(a * np.conj(a))))
    b = a @ a
    return float(np.real(np.sum(b * np.conj(a))))


def trace_power(spectrum_or_matrix, p: int, with_flag: bool = False):
    """Sum of p-th eigenvalue powers, Trace A^p.

    A matrix argument uses direct multiplication for p <= 3 and is
    eigensolved first otherwise; the spectrum route costs O(n) per power,
    which matters for the high powers p of order n^{2/3}.  When any
    |lambda_j|^p would overflow, the sum is accumulated in log-magnitude
    space and the overflow flag is set; with ``with_flag`` the return value
    is the pair (value, overflowed).
    """
    if p < 1 or p != int(p):
        raise DomainError("power must be a positive integer")
    p = int(p)
    if isinstance(spectrum_or_matrix, Spectrum):
        lam = spectrum_or_matrix.eigenvalues
    else:
        a = np.asarray(spectrum_or_matrix)
        if a.ndim != 2:
            raise DomainError("expected a Spectrum or a square matrix")
        if p <= 3:
            value = _matrix_trace_power(a, p)
            return (value, False) if with_flag else value
        lam = eigenvalues(a).eigenvalues

    top = float(np.max(np.abs(lam)))
    if top > 0.0 and p * math.log(top) > _LOG_HUGE:
        with np.errstate(divide="ignore"):
            logs = p * np.log(np.abs(lam))
        shift = float(np.max(logs))
        signs = np.where(lam < 0.0, (-1.0) ** p, 1.0)
        signs[np.abs(lam) == 0.0] = 0.0
        total = float(np.sum(signs * np.exp(logs - shift)))
        if total == 0.0:
            value = 0.0
        elif shift + math.log(abs(total)) <= _LOG_HUGE:
            value = math.copysign(math.exp(shift + math.log(abs(total))), total)
        else:
            value = math.copysign(math.inf, total)
        return (value, True) if with_flag else value

    value = float(np.sum(lam ** p))
    return (value, False) if with_flag else value


def trace_power_matmul(matrix: np.ndarray, p: int) -> float:
    """Trace of A^p by repeated multiplication; cross-check route, p <= 6."""
    if not 1 <= p <= 6:
        raise DomainError("multiplication route is limited to p in 1..6")
    a = np.asarray(matrix)
    acc = a
    for _ in range(p - 1):
        acc = acc @ a
    return float(np.real(np.trace(acc)))


def even_trace_moments(matrix: np.ndarray, smax: int) -> list:
    """[Trace A^2, Trace A^4, ..., Trace A^{2 smax}] without eigensolving.

    Only B = A^2 and its successive powers are formed; the pairing
    Trace(M B) = sum M o conj(B) for hermitian B turns each moment into an
    elementwise sum, so smax = 3 costs two matrix products in total.
    """
    if smax < 1:
        raise DomainError("smax must be >= 1")
    a = np.asarray(matrix)
    out = [float(np.real(np.sum(a * np.conj(a))))]
    if smax == 1:
        return out
    b = a @ a
    out.append(float(np.real(np.sum(b * np.conj(b)))))
    bpow = b
    for _ in range(3, smax + 1):
        bpow = bpow @ b
        out.append(float(np.real(np.sum(bpow * np.conj(b)))))
    return out


def empirical_esd(spectrum: Spectrum, grid) -> np.ndarray:
    """N_n(lambda) = (1/n) #{eigenvalues <= lambda} at sorted grid points."""
    g = np.asarray(grid, dtype=float)
    if np.any(np.diff(g) < 0.0):
        raise DomainError("grid must be sorted ascending")
    ascending = spectrum.eigenvalues[::-1]
    return np.searchsorted(ascending, g, side="right") / float(spectrum.n)


def semicircle_cdf(x):
    """CDF of the semicircle density (2/pi) sqrt(1 - u^2) on [-1, 1]."""
    u = np.clip(np.asarray(x, dtype=float), -1.0, 1.0)
    val = (u * np.sqrt(1.0 - u * u) + np.arcsin(u)) / math.pi + 0.5
    if np.ndim(x) == 0:
        return float(val)
    return val
