"""Exception hierarchy shared across the library.

Exit-code mapping used by the CLI: configuration problems -> 2,
I/O problems -> 3, numeric failures -> 4.
"""


class CrancovError(Exception):
    """Base class for all library errors."""


class ConfigurationError(CrancovError):
    """Invalid or inconsistent configuration (bad key, out-of-range value)."""


class DomainError(CrancovError):
    """Argument outside the mathematical domain of an operation."""


class NumericError(CrancovError):
    """A numeric procedure failed to converge or produced non-finite values."""

    def __init__(self, message, partial=None, terms=None):
        super().__init__(message)
        self.partial = partial
        self.terms = terms


class StatisticalError(CrancovError):
    """A Monte Carlo estimate could not be formed (e.g. all samples excluded)."""
