"""Error taxonomy shared across the package.

Each class maps to one process exit code in the command line driver:
configuration problems exit 2, failed checks exit 1, resource guards exit 3.
"""


class WignerLabError(Exception):
    """Base class for all package errors."""


class ConfigurationError(WignerLabError):
    """Invalid parameters, malformed config files, inconsistent ensemble specs."""


class DomainError(WignerLabError):
    """Argument outside the validated domain of a numerical routine."""


class NumericError(WignerLabError):
    """A numerical process failed: no convergence, blow-up, loss of positivity."""


class ResourceLimitError(WignerLabError):
    """A computation would exceed the declared enumeration or memory budget."""
