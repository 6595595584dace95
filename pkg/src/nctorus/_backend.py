"""Pick the compiled kernels when available; ``NCT_PURE_PYTHON=1`` forces the fallback."""
import os

from . import _fallback

if os.environ.get("NCT_PURE_PYTHON"):
    kernels = _fallback
    BACKEND = "python"
else:
    try:
        from . import _kernels as kernels
        BACKEND = "cython"
    except ImportError:
        kernels = _fallback
        BACKEND = "python"

TWISTED = _fallback.TWISTED
RAW = _fallback.RAW
