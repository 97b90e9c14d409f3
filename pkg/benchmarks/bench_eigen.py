"""Timing comparison of the compiled and pure eigenvalue backends.

Run as:  python3 benchmarks/bench_eigen.py [nmax]

Both backends produce identical spectra up to roundoff; the point of the
table is the speed ratio that justifies shipping the extension, with the
pure path kept as a portable fallback.
"""

import sys
import time

import numpy as np

from wignerlab import _eigen_py
from wignerlab.ensembles import goe, gue, replica_key, sample_matrix

try:
    from wignerlab import _eigen_cy
except ImportError:
    _eigen_cy = None


def _time(fn, matrices):
    best = float("inf")
    for _ in range(3):
        start = time.perf_counter()
        for m in matrices:
            fn(m)
        best = min(best, (time.perf_counter() - start) / len(matrices))
    return best


def main() -> int:
    nmax = int(sys.argv[1]) if len(sys.argv) > 1 else 200
    sizes = [n for n in (50, 100, 200, 400) if n <= nmax]
    if _eigen_cy is None:
        print("compiled backend not built; timing the pure backend only")
    print(f"{'kernel':>12} {'n':>5} {'pure ms':>10} {'compiled ms':>12} "
          f"{'speedup':>8} {'max diff':>10}")
    for spec, kernel, pure_fn, cy_fn in (
            (goe(), "eigvals_sym", _eigen_py.eigvals_sym,
             _eigen_cy.eigvals_sym if _eigen_cy else None),
            (gue(), "eigvals_herm", _eigen_py.eigvals_herm,
             _eigen_cy.eigvals_herm if _eigen_cy else None)):
        for n in sizes:
            mats = [sample_matrix(spec, n, replica_key(1, r)) for r in range(3)]
            t_pure = _time(pure_fn, mats)
            if cy_fn is None:
                print(f"{kernel:>12} {n:>5} {1e3 * t_pure:>10.2f} "
                      f"{'-':>12} {'-':>8} {'-':>10}")
                continue
            t_cy = _time(cy_fn, mats)
            diff = max(float(np.max(np.abs(pure_fn(m) - cy_fn(m))))
                       for m in mats)
            print(f"{kernel:>12} {n:>5} {1e3 * t_pure:>10.2f} "
                  f"{1e3 * t_cy:>12.2f} {t_pure / t_cy:>8.1f} {diff:>10.2e}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
