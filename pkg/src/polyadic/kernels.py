"""Kernel backend selection.

The compiled extension is used when it was built; otherwise the numpy
fallback.  Set ``POLYADIC_PURE=1`` to force the fallback.
"""

import os

from . import _kernels_py

try:
    if os.environ.get("POLYADIC_PURE"):
        raise ImportError("pure backend requested")
    from . import _kernels as _impl
    BACKEND = "cython"
except ImportError:
    _impl = _kernels_py
    BACKEND = "python"

BACKENDS = {"python": _kernels_py}
if BACKEND == "cython":
    BACKENDS["cython"] = _impl

assoc_witness = _impl.assoc_witness
solvable_witness = _impl.solvable_witness
homotopy_witness = _impl.homotopy_witness
medial_witness = _impl.medial_witness
autotopy_search = _impl.autotopy_search
