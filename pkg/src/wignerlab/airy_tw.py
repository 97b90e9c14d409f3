"""Single import surface for the special-function layer.

Collects the Airy functions, the Hermite wave functions, the Airy kernel
correlations, the Painleve II branch, and the edge distribution functions
in one namespace.
"""

from .airykernel import (airy_kernel, airy_kernel_quadrature, edge_correlation,
                         goe_block, kernel_diagonal, linear_statistic_limit)
from .airyfun import airy, airy_ai, airy_cumulative
from .hermite import gue_finite_density, hermite_psi
from .painleve import PainleveTable, left_asymptote, painleve_q
from .tracywidom import TWTable, default_table, tw_cdf, tw_table

__all__ = [
    "airy",
    "airy_ai",
    "airy_cumulative",
    "airy_kernel",
    "airy_kernel_quadrature",
    "default_table",
    "edge_correlation",
    "goe_block",
    "gue_finite_density",
    "hermite_psi",
    "kernel_diagonal",
    "left_asymptote",
    "linear_statistic_limit",
    "painleve_q",
    "PainleveTable",
    "tw_cdf",
    "tw_table",
    "TWTable",
]
