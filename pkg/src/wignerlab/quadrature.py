"""Composite Gauss-Legendre quadrature on uniform panels.

The integrands in this package are smooth and either decay super-exponentially
or oscillate with wavelength well above the default panel width, so fixed
panels with a 15-point rule reach close to machine accuracy without adaptivity.
"""

from __future__ import annotations

import numpy as np

_NODES, _WEIGHTS = np.polynomial.legendre.leggauss(15)


def panel_points(a: float, b: float, max_width: float = 0.25):
    """Quadrature abscissas and weights for [a, b] split into uniform panels.

    Returns (x, w) with sum(w * f(x)) approximating the integral.
    """
    if b <= a:
        return np.empty(0), np.empty(0)
    npan = max(1, int(np.ceil((b - a) / max_width)))
    edges = np.linspace(a, b, npan + 1)
    mid = 0.5 * (edges[:-1] + edges[1:])
    half = 0.5 * (edges[1] - edges[0])
    x = (mid[:, None] + half * _NODES[None, :]).ravel()
    w = np.broadcast_to(half * _WEIGHTS, (npan, _NODES.size)).ravel()
    return x, w


def integrate(f, a: float, b: float, max_width: float = 0.25) -> float:
    x, w = panel_points(a, b, max_width)
    if x.size == 0:
        return 0.0
    return float(np.dot(w, f(x)))
