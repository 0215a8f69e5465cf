"""Kernel backend selection.

The compiled module is used when it imported cleanly and the graph fits in a
64-bit mask; everything else goes to the pure-Python kernels.  Set
``INFLUSAT_PURE=1`` to force the fallback for the whole process.
"""

from __future__ import annotations

import os
from types import ModuleType

from . import _pykernels

try:
    if os.environ.get("INFLUSAT_PURE"):
        raise ImportError("pure-Python kernels forced by INFLUSAT_PURE")
    from . import _ckernels
except ImportError:
    _ckernels = None

BACKEND = "cython" if _ckernels is not None else "python"
MAX_COMPILED_VERTICES = 64


def pick(n: int, backend: str | None = None) -> ModuleType:
    """Kernel module for a graph on ``n`` vertices; ``backend`` forces 'python' or 'cython'."""
    if backend == "python":
        return _pykernels
    if backend == "cython":
        if _ckernels is None:
            raise RuntimeError("compiled kernels are not available")
        if n > MAX_COMPILED_VERTICES:
            raise RuntimeError(f"compiled kernels support at most {MAX_COMPILED_VERTICES} vertices")
        return _ckernels
    if _ckernels is not None and n <= MAX_COMPILED_VERTICES:
        return _ckernels
    return _pykernels
