"""Kernel backend selection.

Prefers the compiled extension, falls back to the numpy implementation.
Set CONVOGRAPH_PURE=1 to force the fallback (useful for benchmarking and
for verifying backend equivalence).
"""

import os

from . import _kernels_py

if os.environ.get("CONVOGRAPH_PURE"):
    _impl = _kernels_py
else:
    try:
        from . import _speedups as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _kernels_py

BACKEND = _impl.BACKEND
distances_from = _impl.distances_from
sweep_sources = _impl.sweep_sources


def available_backends():
    """Name/module pairs of every importable backend."""
    backends = [("python", _kernels_py)]
    try:
        from . import _speedups

        backends.insert(0, ("c", _speedups))
    except ImportError:
        pass
    return backends
