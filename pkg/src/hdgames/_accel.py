"""Backend selection for the hot kernels.

``HDGAMES_BACKEND=numpy`` forces the vectorised numpy/scipy fallback;
otherwise numba is used when it can be imported.  Both backends return
the same winners and verdicts; the variable only changes speed
(strategies may pick different but equally valid edges).
"""

import os

_requested = os.environ.get("HDGAMES_BACKEND", "numba").strip().lower()

try:
    if _requested == "numpy":
        raise ImportError
    import numba

    njit = numba.njit(cache=True, nogil=True)
    BACKEND = "numba"
except ImportError:
    numba = None
    njit = None
    BACKEND = "numpy"

USE_NUMBA = BACKEND == "numba"
