"""Reference eigenvalue kernels in plain numpy and Python.

Same algorithms as the compiled module: Householder reduction to tridiagonal
form (unitary reflections for hermitian input, which confine complex
arithmetic to the reduction), then implicit-shift QL on the tridiagonal pair.
The compiled twin is preferred at import time; this module keeps the package
usable without a C toolchain and pins down the semantics in tests.
"""

from __future__ import annotations

from math import copysign, hypot, sqrt

import numpy as np

from .errors import NumericError

_EPS = float(np.finfo(np.float64).eps)
_MAX_SWEEPS = 50


def tridiag_sym(a: np.ndarray):
    """Reduce a real symmetric matrix (destroyed) to (diagonal, subdiagonal)."""
    n = a.shape[0]
    e = np.zeros(n)
    for i in range(n - 1, 0, -1):
        x = a[i, :i]
        if i == 1:
            e[i] = x[0]
            continue
        scale = float(np.sum(np.abs(x)))
        if scale == 0.0:
            e[i] = 0.0
            continue
        x /= scale
        sigma = float(x @ x)
        f = x[i - 1]
        g = -copysign(sqrt(sigma), f)
        e[i] = scale * g
        h = sigma - f * g
        x[i - 1] = f - g
        p = a[:i, :i] @ x / h
        k = float(x @ p) / (2.0 * h)
        q = p - k * x
        a[:i, :i] -= np.outer(q, x) + np.outer(x, q)
    return np.diag(a).copy(), e


def tridiag_herm(a: np.ndarray):
    """Hermitian analogue; the returned tridiagonal pair is real.

    Phases of the complex subdiagonal are dropped, a similarity by a diagonal
    unitary that leaves eigenvalues unchanged.
    """
    n = a.shape[0]
    e = np.zeros(n)
    for i in range(n - 1, 0, -1):
        x = a[i, :i]
        if i == 1:
            e[i] = abs(x[0])
            continue
        scale = float(np.sum(np.abs(x.real)) + np.sum(np.abs(x.imag)))
        if scale == 0.0:
            e[i] = 0.0
            continue
        # the reflector must map the column below the diagonal, which is the
        # conjugate of this row, onto a coordinate axis
        np.conjugate(x, out=x)
        x /= scale
        sigma = float(np.real(x @ x.conj()))
        f = x[i - 1]
        af = abs(f)
        g = sqrt(sigma)
        e[i] = scale * g
        phase = f / af if af != 0.0 else 1.0
        h = sigma + af * g
        x[i - 1] = f + phase * g
        p = a[:i, :i] @ x / h
        k = float(np.real(x.conj() @ p)) / (2.0 * h)
        q = p - k * x
        a[:i, :i] -= np.outer(x, q.conj()) + np.outer(q, x.conj())
    return np.real(np.diag(a)).copy(), e


def tql_implicit(d: np.ndarray, e: np.ndarray) -> np.ndarray:
    """Eigenvalues of the symmetric tridiagonal (d, e), e[i] = subdiagonal i.

    Implicit QL sweeps with Wilkinson shifts; raises NumericError past the
    sweep cap.
    """
    n = d.size
    dd = list(map(float, d))
    # shift to off[i] = coupling between i and i+1
    off = [float(e[i + 1]) for i in range(n - 1)] + [0.0]
    for l in range(n):
        sweeps = 0
        while True:
            m = l
            while m < n - 1:
                s = abs(dd[m]) + abs(dd[m + 1])
                if abs(off[m]) <= _EPS * s:
                    break
                m += 1
            if m == l:
                break
            sweeps += 1
            if sweeps > _MAX_SWEEPS:
                raise NumericError(f"tridiagonal QL did not converge within {_MAX_SWEEPS} sweeps")
            g = (dd[l + 1] - dd[l]) / (2.0 * off[l])
            r = hypot(g, 1.0)
            g = dd[m] - dd[l] + off[l] / (g + copysign(r, g))
            s = c = 1.0
            p = 0.0
            underflow = False
            for i in range(m - 1, l - 1, -1):
                f = s * off[i]
                b = c * off[i]
                r = hypot(f, g)
                off[i + 1] = r
                if r == 0.0:
                    dd[i + 1] -= p
                    off[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = dd[i + 1] - p
                r = (dd[i] - g) * s + 2.0 * c * b
                p = s * r
                dd[i + 1] = g + p
                g = c * r - b
            if underflow:
                continue
            dd[l] -= p
            off[l] = g
            off[m] = 0.0
    out = np.array(dd)
    out.sort()
    return out


def eigvals_sym(a: np.ndarray) -> np.ndarray:
    d, e = tridiag_sym(np.array(a, dtype=np.float64, order="C", copy=True))
    return tql_implicit(d, e)


def eigvals_herm(a: np.ndarray) -> np.ndarray:
    d, e = tridiag_herm(np.array(a, dtype=np.complex128, order="C", copy=True))
    return tql_implicit(d, e)
