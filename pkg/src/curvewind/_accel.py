"""Optional numba acceleration with a pure-numpy fallback.

Set the environment variable ``CURVEWIND_NO_NUMBA=1`` before import to force
the fallback path even when numba is installed.  The kernels in
:mod:`curvewind._kernels` are written so the same source runs either way;
batch entry points additionally dispatch to vectorised numpy implementations
when numba is off.
"""

from __future__ import annotations

import os

_DISABLED = os.environ.get("CURVEWIND_NO_NUMBA", "").strip() not in ("", "0")

try:
    if _DISABLED:
        raise ImportError("numba disabled by CURVEWIND_NO_NUMBA")
    from numba import njit

    USING_NUMBA = True
except ImportError:

    def njit(*args, **kwargs):
        """Pass-through decorator standing in for numba.njit."""

        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]

        def wrap(func):
            return func

        return wrap

    USING_NUMBA = False


__all__ = ["njit", "USING_NUMBA"]
