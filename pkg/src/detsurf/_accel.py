"""Numba switch.

Set ``DETSURF_DISABLE_NUMBA=1`` to force the pure-numpy kernels. When numba
is missing the numpy kernels are used regardless of the flag.
"""
from __future__ import annotations

import os

_FALSY = {"", "0", "false", "no", "off"}

try:
    import numba  # noqa: F401
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]
        return lambda f: f


def numba_disabled() -> bool:
    return os.environ.get("DETSURF_DISABLE_NUMBA", "").strip().lower() not in _FALSY


USE_NUMBA = HAVE_NUMBA and not numba_disabled()
