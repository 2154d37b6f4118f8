"""Kernel backend selection.

Imports the compiled extension when it was built, the pure Python
implementation otherwise. Set SEMIKEY_BACKEND=python to force the
fallback (used by the benchmark and the parity tests).
"""

import os

from . import _kernels_py

_impl = _kernels_py
if os.environ.get("SEMIKEY_BACKEND", "").lower() not in ("py", "python"):
    try:
        from . import _kernels_c as _impl  # type: ignore[no-redef]
    except ImportError:
        pass

BACKEND = _impl.BACKEND_NAME
prepare_tables = _impl.prepare_tables
mat_mul = _impl.mat_mul
mat_add = _impl.mat_add
scalar_mul = _impl.scalar_mul
scalar_mul_right = _impl.scalar_mul_right
absorbs = _impl.absorbs
