"""Kernel selection: compiled extension when available, pure Python otherwise.

Set ``LATFORMS_PURE=1`` in the environment to force the fallback (used by the
benchmark and the backend-equivalence tests).
"""

import os

if os.environ.get("LATFORMS_PURE") == "1":
    from . import _pykernels as kernels
else:
    try:
        from . import _kernels as kernels  # type: ignore[attr-defined]
    except ImportError:
        from . import _pykernels as kernels

BACKEND = kernels.BACKEND
reduce_loop = kernels.reduce_loop
canonical_gather = kernels.canonical_gather
perm_min_distance = kernels.perm_min_distance
