"""Kernel backend selection.

The compiled Cython module is used when it was built; otherwise the numpy
fallback is imported. Setting ``CDJ_PURE_PYTHON=1`` forces the fallback.
"""
from __future__ import annotations

import os

from . import _pykernels as python_backend

if os.environ.get("CDJ_PURE_PYTHON", "") not in ("", "0"):
    _impl = python_backend
    compiled_backend = None
else:
    try:
        from . import _kernels as _impl
    except ImportError:  # extension not built
        _impl = python_backend
    compiled_backend = _impl if _impl is not python_backend else None

BACKEND: str = _impl.BACKEND

cayley_table = _impl.cayley_table
orbit_labels = _impl.orbit_labels
closure = _impl.closure
product_tuples = _impl.product_tuples
rref_mod = _impl.rref_mod
nullspace_mod = _impl.nullspace_mod
charpoly_mod = _impl.charpoly_mod

__all__ = [
    "BACKEND",
    "cayley_table",
    "orbit_labels",
    "closure",
    "product_tuples",
    "rref_mod",
    "nullspace_mod",
    "charpoly_mod",
    "python_backend",
    "compiled_backend",
]
