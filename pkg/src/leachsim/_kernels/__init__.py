"""Stencil kernel backends, selected once at import.

The compiled Cython kernel is preferred when its extension module is present;
otherwise the numpy implementation takes over with identical results.  Set
``LEACHSIM_KERNEL=numpy`` (or ``native``) to force a backend; forcing
``native`` when the extension is missing raises immediately rather than
silently degrading.
"""

from __future__ import annotations

import os

from ._ref import (  # canonical token values shared by both backends
    BOTTOM_FROZEN,
    BOTTOM_ZERO_GRADIENT,
    SCHEME_FORWARD,
    SCHEME_UPWIND,
    SIDES_NEUMANN,
    SIDES_REFLECT,
)
from . import _ref

_requested = os.environ.get("LEACHSIM_KERNEL", "auto").lower()
if _requested not in ("auto", "native", "numpy"):
    raise ImportError(
        f"LEACHSIM_KERNEL must be 'auto', 'native' or 'numpy', got {_requested!r}"
    )

if _requested == "numpy":
    _impl = _ref
    BACKEND = "numpy"
else:
    try:
        from . import _native as _impl  # type: ignore[no-redef]

        BACKEND = "native"
    except ImportError:
        if _requested == "native":
            raise ImportError(
                "LEACHSIM_KERNEL=native but the compiled kernel is not built; "
                "run `python setup.py build_ext --inplace` or reinstall"
            ) from None
        _impl = _ref
        BACKEND = "numpy"

advance = _impl.advance
apply_bcs = _impl.apply_bcs
closed_box = _impl.closed_box

__all__ = [
    "BACKEND",
    "BOTTOM_FROZEN",
    "BOTTOM_ZERO_GRADIENT",
    "SCHEME_FORWARD",
    "SCHEME_UPWIND",
    "SIDES_NEUMANN",
    "SIDES_REFLECT",
    "advance",
    "apply_bcs",
    "closed_box",
]
