"""Kernel backend selection.

The compiled extension is preferred when it imports; otherwise the numpy
fallback is used.  Set ``CONJUGACY_BACKEND=python`` to force the fallback
(used by the backend benchmark and the cross-backend tests).
"""

from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("CONJUGACY_BACKEND", "").lower() == "python":
    _active = _kernels_py
else:
    try:
        from . import _kernels as _active  # type: ignore[no-redef]
    except ImportError:
        _active = _kernels_py

BACKEND = _active.BACKEND_NAME


def get_backend():
    return _active
