"""Small dense linear algebra kept in-repo for cross-platform determinism.

Matrices here are tiny (block determinants up to 12 x 12, collocation
systems of a few hundred): partial-pivot elimination with vectorized row
updates is plenty.
"""

from __future__ import annotations

import numpy as np

from .errors import NumericError


def lu_factor(a: np.ndarray):
    """In-place style partial-pivot LU; returns (lu, pivots, sign)."""
    m = np.array(a, dtype=float)
    n = m.shape[0]
    piv = np.arange(n)
    sign = 1.0
    for col in range(n):
        p = col + int(np.argmax(np.abs(m[col:, col])))
        if m[p, col] == 0.0:
            raise NumericError("singular matrix in elimination")
        if p != col:
            m[[col, p]] = m[[p, col]]
            piv[[col, p]] = piv[[p, col]]
            sign = -sign
        m[col + 1:, col] /= m[col, col]
        m[col + 1:, col + 1:] -= np.outer(m[col + 1:, col], m[col, col + 1:])
    return m, piv, sign


def solve_dense(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Solve a x = b for one right-hand side."""
    lu, piv, _ = lu_factor(a)
    n = lu.shape[0]
    x = np.asarray(b, dtype=float)[piv].copy()
    for i in range(1, n):
        x[i] -= lu[i, :i] @ x[:i]
    for i in range(n - 1, -1, -1):
        x[i] = (x[i] - lu[i, i + 1:] @ x[i + 1:]) / lu[i, i]
    return x


def det_dense(a: np.ndarray) -> float:
    """Determinant via the same elimination; 0.0 on exact singularity."""
    try:
        lu, _, sign = lu_factor(a)
    except NumericError:
        return 0.0
    return float(sign * np.prod(np.diag(lu)))
