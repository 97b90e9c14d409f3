"""Backend selection for the eigenvalue kernels.

The compiled extension is used when present; the numpy/Python reference
implementation otherwise, or when WIGNERLAB_PURE=1 is set.  Both expose
eigvals_sym / eigvals_herm returning ascending eigenvalues.
"""

from __future__ import annotations

import os

from . import _eigen_py

if os.environ.get("WIGNERLAB_PURE", "") == "1":
    _impl = _eigen_py
else:
    try:
        from . import _eigen_cy as _impl
    except ImportError:
        _impl = _eigen_py


def backend_name() -> str:
    return "compiled" if _impl.__name__.endswith("_eigen_cy") else "pure"


def eigvals_sym(a):
    return _impl.eigvals_sym(a)


def eigvals_herm(a):
    return _impl.eigvals_herm(a)
