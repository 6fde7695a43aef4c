"""Kernel dispatch: compiled extension if present, pure Python otherwise.

Set ``PERIPLECTIC_PURE=1`` to force the pure-Python implementations (used by
the benchmark and by tests that cross-check the two).
"""

import os

from . import _kernels_py

if os.environ.get("PERIPLECTIC_PURE"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _kernels_py

IMPLEMENTATION = _impl.IMPLEMENTATION

combine_scaled = _impl.combine_scaled
apply_columns = _impl.apply_columns
matmul_dicts = _impl.matmul_dicts
bareiss_rank = _impl.bareiss_rank
reduce_against = _impl.reduce_against
