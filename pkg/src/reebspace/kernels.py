"""Backend selection for the hot kernels.

The compiled extension is used when it imports; otherwise the pure-Python
fallback is used.  Setting ``REEBSPACE_PURE_PYTHON=1`` forces the fallback.
"""
from __future__ import annotations

import os

from . import _pykernels

BACKEND = "python"
_impl = _pykernels

if os.environ.get("REEBSPACE_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _compiled
    except ImportError:  # pragma: no cover - depends on the build
        _compiled = None
    if _compiled is not None:
        _impl = _compiled
        BACKEND = "cython"

vertex_link_stats = _impl.vertex_link_stats
edge_link_signs = _impl.edge_link_signs
triangles_containing = _impl.triangles_containing
bbox_overlap_pairs = _impl.bbox_overlap_pairs

__all__ = ["BACKEND", "vertex_link_stats", "edge_link_signs",
           "triangles_containing", "bbox_overlap_pairs"]
