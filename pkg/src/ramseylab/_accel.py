"""Backend selection for the numeric kernels.

Set ``RAMSEYLAB_NO_NUMBA=1`` to force the pure-numpy path (also used
automatically when numba cannot be imported).
"""
import os

_FLAG = os.environ.get("RAMSEYLAB_NO_NUMBA", "").strip().lower()

try:
    import numba as _numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    _numba = None

USE_NUMBA = _numba is not None and _FLAG not in ("1", "true", "yes", "on")
BACKEND = "numba" if USE_NUMBA else "numpy"


def njit(*args, **kwargs):
    """``numba.njit`` when the numba backend is active, otherwise a no-op."""
    if USE_NUMBA:
        return _numba.njit(*args, **kwargs)
    if len(args) == 1 and callable(args[0]) and not kwargs:
        return args[0]

    def wrapper(func):
        return func

    return wrapper
