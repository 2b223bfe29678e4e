"""Backend selection for the numeric kernels.

Set ``EXTQUOT_DISABLE_NUMBA=1`` to force the pure-numpy path. The numba path
is also skipped silently when numba cannot be imported.
"""
import os

_FLAG = os.environ.get("EXTQUOT_DISABLE_NUMBA", "").strip().lower()

try:
    import numba  # noqa: F401

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and _FLAG not in ("1", "true", "yes", "on")
BACKEND = "numba" if USE_NUMBA else "numpy"
