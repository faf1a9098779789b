"""Kernel backend selection.

The compiled ``_core`` extension is used when it imports; otherwise the numpy
implementation in ``_pykernels``.  Setting ``VORTEX_WIGNER_PURE=1`` forces the
numpy backend.
"""
from __future__ import annotations

import os

from . import _pykernels

python = _pykernels

try:
    if os.environ.get("VORTEX_WIGNER_PURE", "") not in ("", "0"):
        raise ImportError("numpy backend requested")
    from . import _core as compiled
except ImportError:
    compiled = None

impl = compiled if compiled is not None else _pykernels
BACKEND = "compiled" if compiled is not None else "python"

laguerre = impl.laguerre
wigner_closed = impl.wigner_closed
oracle_sum = impl.oracle_sum
