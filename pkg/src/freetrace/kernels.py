"""Kernel backend selection.

Prefers the compiled Cython extension when it is built; otherwise falls back
to the pure-Python implementation.  Set FREETRACE_PURE_PYTHON=1 to force the
fallback (useful for benchmarking and debugging).  ``BACKEND`` names the
implementation in use.
"""

from __future__ import annotations

import os

if os.environ.get("FREETRACE_PURE_PYTHON") == "1":
    from . import _kernels_py as _impl
else:
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]
    except ImportError:
        from . import _kernels_py as _impl  # type: ignore[no-redef]

BACKEND: str = _impl.IMPLEMENTATION

min_rotation_index = _impl.min_rotation_index
poly_trace = _impl.poly_trace
poly_trace_grad = _impl.poly_trace_grad
