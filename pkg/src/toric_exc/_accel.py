"""Numba switch.

Kernels are compiled with numba when it is importable and the environment
variable ``TORIC_EXC_NUMBA`` is not set to ``0``. Otherwise the pure numpy
implementations in :mod:`toric_exc.kernels` are used.
"""
import os

_flag = os.environ.get("TORIC_EXC_NUMBA", "1").strip().lower()
_requested = _flag not in ("0", "false", "no", "off")

try:
    if not _requested:
        raise ImportError
    from numba import njit as _njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised with TORIC_EXC_NUMBA=0
    _njit = None
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and _requested


def njit(*args, **kwargs):
    """``numba.njit`` when available, identity decorator otherwise."""
    if _njit is not None:
        return _njit(*args, **kwargs)
    if len(args) == 1 and callable(args[0]) and not kwargs:
        return args[0]

    def wrap(f):
        return f

    return wrap
