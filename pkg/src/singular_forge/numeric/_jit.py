"""Backend selection: numba when available unless SINGULAR_FORGE_NUMBA=0."""

import os

try:
    import numba
except ImportError:  # pragma: no cover
    numba = None

USE_NUMBA = numba is not None and os.environ.get("SINGULAR_FORGE_NUMBA", "1") != "0"


def njit(fn):
    if USE_NUMBA:
        return numba.njit(cache=True, nogil=True)(fn)
    return fn
