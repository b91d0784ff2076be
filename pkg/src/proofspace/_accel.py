"""Optional numba compilation.

Set ``PROOFSPACE_NUMBA=0`` to run the kernels as plain numpy code.
"""
import os

try:
    import numba
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and os.environ.get("PROOFSPACE_NUMBA", "1").strip().lower() not in ("0", "false", "no", "off")


def compile_kernel(func):
    """Compiled version of ``func``, or None when numba is missing."""
    if not HAVE_NUMBA:
        return None
    return numba.njit(cache=True)(func)
