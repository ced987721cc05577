"""Backend selection for the numeric kernels.

Set ``ALCOVETORSION_BACKEND=numpy`` to force the pure-numpy path; the
default is numba when it can be imported.
"""
import os

try:
    import numba
except ImportError:  # pragma: no cover - exercised only without numba
    numba = None

HAVE_NUMBA = numba is not None
REQUESTED = os.environ.get("ALCOVETORSION_BACKEND", "numba").strip().lower()
if REQUESTED not in ("numba", "numpy"):
    raise ImportError(f"ALCOVETORSION_BACKEND must be 'numba' or 'numpy', got {REQUESTED!r}")
USE_NUMBA = HAVE_NUMBA and REQUESTED == "numba"


def njit(*args, **kwargs):
    """``numba.njit`` with caching on; returns ``None`` when numba is missing."""
    if not HAVE_NUMBA:
        return lambda fn: None
    kwargs.setdefault("cache", True)
    return numba.njit(*args, **kwargs)


def backend_name() -> str:
    return "numba" if USE_NUMBA else "numpy"
