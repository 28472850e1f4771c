"""Kernel dispatch: compiled extension if available, pure Python otherwise.

The compiled module (_fast, built from _fast.pyx) and the reference
module (_ref) implement the same three functions with the same
floating-point operation order, so switching backends never changes a
result bit.  Set VISROUTE_PURE=1 to force the pure backend, e.g. for
benchmarking or to rule out the extension when debugging.
"""

from __future__ import annotations

import os

from . import _ref

if os.environ.get("VISROUTE_PURE") == "1":
    _impl = _ref
    BACKEND = "pure"
else:
    try:
        from . import _fast as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        _impl = _ref
        BACKEND = "pure"

NEAR_TIE_RTOL = _ref.NEAR_TIE_RTOL

collinear_triples = _impl.collinear_triples
visibility_matrix = _impl.visibility_matrix
dijkstra = _impl.dijkstra

__all__ = [
    "BACKEND",
    "NEAR_TIE_RTOL",
    "collinear_triples",
    "dijkstra",
    "visibility_matrix",
]
