"""Numerical construction and verification of local operators in the massive Ising model."""

from .errors import AccuracyError, ResourceLimitError, SingularityError

__version__ = "0.1.0"

__all__ = [
    "AccuracyError",
    "ResourceLimitError",
    "SingularityError",
    "__version__",
]
