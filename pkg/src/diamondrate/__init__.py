"""Zero-error rate-region outer bounds for function computation on the
three-source diamond network."""

from .demand_function import (DemandFunction, Pmf, emit, function_pmf, load, load_fixture,
                              load_path, loads, preimage_count)
from .errors import DemandFunctionError, InvariantError, ResourceCapError

__version__ = "0.1.0"

__all__ = [
    "DemandFunction", "Pmf", "emit", "function_pmf", "load", "load_fixture", "load_path",
    "loads", "preimage_count", "DemandFunctionError", "InvariantError", "ResourceCapError",
]
