"""Exception types shared across the package.

The CLI maps each class to a distinct exit code, so library code raises
these rather than bare ``ValueError``/``RuntimeError``.
"""


class DemandFunctionError(ValueError):
    """Malformed or degenerate demand-function input."""


class ResourceCapError(RuntimeError):
    """An enumeration would exceed the configured state cap."""


class InvariantError(RuntimeError):
    """An internal consistency check failed."""
