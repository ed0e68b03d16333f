"""Finite-window tools for Ramsey theory on the integers."""
__version__ = "0.1.0"

from ._accel import BACKEND
from .errors import RamseyLabError, ResourceLimitError
from .ground_set import GroundSet, Interval, shift

__all__ = ["BACKEND", "GroundSet", "Interval", "RamseyLabError", "ResourceLimitError", "shift", "__version__"]
