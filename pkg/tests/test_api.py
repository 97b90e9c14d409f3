"""The public import surfaces stay importable and complete."""

import wignerlab
from wignerlab import airy_tw


def test_version_string():
    parts = wignerlab.__version__.split(".")
    assert len(parts) == 3 and all(p.isdigit() for p in parts)


def test_special_function_facade_exports():
    for name in airy_tw.__all__:
        assert hasattr(airy_tw, name), name
    # the facade spans all five special-function layers
    assert callable(airy_tw.airy_ai)
    assert callable(airy_tw.hermite_psi)
    assert callable(airy_tw.airy_kernel)
    assert callable(airy_tw.painleve_q)
    assert callable(airy_tw.tw_cdf)
