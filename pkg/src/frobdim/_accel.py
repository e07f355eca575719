"""JIT switch for the numeric kernels.

Set ``FROBDIM_DISABLE_NUMBA=1`` to force the pure-numpy code paths. When numba
is missing the numpy paths are used automatically.
"""

import os

_FLAG = os.getenv("FROBDIM_DISABLE_NUMBA", "").strip().lower()
NUMBA_DISABLED = _FLAG not in ("", "0", "false", "no")

try:
    from numba import njit as _njit

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAS_NUMBA = False
    _njit = None

USE_NUMBA = HAS_NUMBA and not NUMBA_DISABLED


def njit(*args, **kwargs):
    """``numba.njit`` when available, otherwise the identity decorator."""
    if HAS_NUMBA:
        return _njit(*args, **kwargs)
    if args and callable(args[0]):
        return args[0]
    return lambda fn: fn
