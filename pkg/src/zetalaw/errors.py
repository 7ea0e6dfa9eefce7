"""Exception hierarchy shared across the toolkit.

The CLI maps these onto process exit codes: :class:`DomainError` and its
subclasses are usage problems (exit 2), :class:`DataError` covers malformed
or degenerate input data (exit 3), and :class:`ConditioningError` covers
numerical failures such as singular covariance matrices (exit 4).
"""


class ZetaLawError(Exception):
    """Base class for every error raised by this package."""


class DomainError(ZetaLawError, ValueError):
    """A parameter lies outside the documented domain of an operation."""


class DivergenceError(DomainError):
    """A series or limit diverges for the requested parameters."""


class SizingError(DomainError):
    """A requested protocol does not fit the available data."""


class ProtocolError(DomainError):
    """Inputs that must share a protocol (e.g. a common grid) do not."""


class DataError(ZetaLawError, ValueError):
    """Input data is malformed or degenerate (non-finite, constant, ...)."""


class DegenerateFitError(DataError):
    """A fit target carries no usable signal."""


class ConditioningError(ZetaLawError, ArithmeticError):
    """A numerical linear-algebra step failed for conditioning reasons."""
