"""Kernel selection: compiled extension if available, pure Python otherwise.

Set THERMOLEN_BACKEND=python or =compiled to force a choice (the latter
raises if the extension was not built).  The decision happens once, at
import time; both kernels implement the same contract, so everything above
this module is backend-agnostic.
"""
from __future__ import annotations

import os

_requested = os.environ.get("THERMOLEN_BACKEND", "auto").lower()

if _requested == "python":
    from . import _kernel_py as kernels
elif _requested == "compiled":
    from . import _kernel_c as kernels  # ImportError here means it was not built
elif _requested == "auto":
    try:
        from . import _kernel_c as kernels
    except ImportError:
        from . import _kernel_py as kernels
else:
    raise RuntimeError(
        f"THERMOLEN_BACKEND={_requested!r} not recognized "
        "(expected auto, python or compiled)")

BACKEND = kernels.BACKEND_NAME
