"""Backend selection for the symbol-array kernels.

The Cython extension is used when it was built; otherwise (or when
``HMCHAOS_BACKEND=python`` is set) the numpy versions are used.
"""
import os

from . import _fallback

BACKEND = "python"
if os.environ.get("HMCHAOS_BACKEND", "").lower() != "python":
    try:
        from . import _kernels as _impl
    except ImportError:
        _impl = _fallback
    else:
        BACKEND = "cython"
else:
    _impl = _fallback

match_mask = _impl.match_mask
block_count = _impl.block_count
shift_distance_numerators = _impl.shift_distance_numerators

__all__ = ["BACKEND", "match_mask", "block_count", "shift_distance_numerators"]
