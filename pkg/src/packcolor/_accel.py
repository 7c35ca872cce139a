"""Numba switch.

Hot kernels are decorated with :func:`kernel`. When numba is importable and
``PACKCOLOR_DISABLE_NUMBA`` is unset (or ``0``), they are compiled with
``numba.njit``; otherwise they run as plain numpy/Python code. The flag is read
once at import time.
"""

from __future__ import annotations

import os

_flag = os.environ.get("PACKCOLOR_DISABLE_NUMBA", "").strip().lower()
DISABLED_BY_ENV = _flag not in ("", "0", "false", "no")

try:
    if DISABLED_BY_ENV:
        raise ImportError
    import numba  # noqa: F401

    NUMBA_ENABLED = True
except ImportError:
    NUMBA_ENABLED = False


def kernel(func):
    """``numba.njit(cache=True)`` when enabled, identity otherwise."""
    if NUMBA_ENABLED:
        import numba

        return numba.njit(cache=True)(func)
    return func


def backend() -> str:
    return "numba" if NUMBA_ENABLED else "numpy"
