"""Pick the kernel implementation at import time.

The compiled ``_ckernels`` extension is used when it was built; otherwise the
numpy fallback in ``_pykernels``. Set ``TSPULLBACK_BACKEND=python`` to force
the fallback (``=cython`` makes a missing extension an ImportError).
"""

import os

from . import _pykernels

_requested = os.environ.get("TSPULLBACK_BACKEND", "").strip().lower()

if _requested == "python":
    kernels = _pykernels
    BACKEND = "python"
else:
    try:
        from . import _ckernels as kernels
        BACKEND = "cython"
    except ImportError:
        if _requested == "cython":
            raise
        kernels = _pykernels
        BACKEND = "python"


def available_backends():
    """Map backend name to kernel module for every importable implementation."""
    out = {"python": _pykernels}
    try:
        from . import _ckernels
    except ImportError:
        pass
    else:
        out["cython"] = _ckernels
    return out
