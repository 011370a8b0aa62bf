"""Kernel selector: compiled extension if available, pure Python otherwise.

``GBS_PURE_KERNEL=1`` in the environment forces the pure implementation
(used by the benchmark and the parity tests).
"""

import os

from gbs import _wordcore_py

if os.environ.get("GBS_PURE_KERNEL"):
    _impl = _wordcore_py
    BACKEND = "python"
else:
    try:
        from gbs import _wordcore as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        _impl = _wordcore_py
        BACKEND = "python"

reduce_items = _impl.reduce_items
sweep_items = _impl.sweep_items
canon_items = _impl.canon_items
inv_items = _impl.inv_items
mul_items = _impl.mul_items


def backend() -> str:
    """Name of the active kernel implementation."""
    return BACKEND
