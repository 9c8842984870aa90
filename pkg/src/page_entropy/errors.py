"""Exception types shared across the package.

The CLI maps these onto distinct exit codes, so library code should raise
the most specific one that applies.
"""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ConfigError(ValueError):
    """A run configuration (CLI flags or JSON config) is invalid."""


class NumericalError(RuntimeError):
    """An iteration failed to converge or a series failed to terminate."""


class InfeasibleSizeError(RuntimeError):
    """The request is well-posed but too large for the chosen method."""
