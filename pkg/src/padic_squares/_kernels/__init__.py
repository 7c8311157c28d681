"""Kernel backend selection.

The compiled Cython module is preferred; the NumPy implementation is the
fallback.  Both export the same functions with identical semantics, so the
rest of the library is backend-agnostic.  Set the environment variable
``PADIC_SQUARES_PURE_PYTHON=1`` to force the fallback (used by the kernel
benchmark and by CI to exercise both paths).
"""

from __future__ import annotations

import os

from . import _pykernels

_impl = _pykernels
if os.environ.get("PADIC_SQUARES_PURE_PYTHON", "0") in ("", "0"):
    try:
        from . import _speedups as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _pykernels

BACKEND: str = _impl.BACKEND

curve_scan = _impl.curve_scan
scatter_scan = _impl.scatter_scan
eval_points_mod = _impl.eval_points_mod
block_sweep_hist = _impl.block_sweep_hist


def backends() -> dict[str, object]:
    """All importable kernel backends, keyed by name."""
    out: dict[str, object] = {"python": _pykernels}
    try:
        from . import _speedups
        out["cython"] = _speedups
    except ImportError:
        pass
    return out
