"""Kernel selection.

The compiled extension ``ptl._kernels`` is used when it imports; otherwise
the pure-Python twin. Set ``PTL_PURE=1`` to force the fallback.
"""

from __future__ import annotations

import os

if os.environ.get("PTL_PURE", "") not in ("", "0"):
    from . import _kernels_py as _impl
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:  # extension not built
        from . import _kernels_py as _impl

IMPL: str = _impl.IMPL
canonical_labelling = _impl.canonical_labelling
orbits = _impl.orbits
relabel_code = _impl.relabel_code
reach = _impl.reach
noncut_mask = _impl.noncut_mask
augment_candidates = _impl.augment_candidates
find_k4 = _impl.find_k4
find_theta5 = _impl.find_theta5
find_pattern = _impl.find_pattern

__all__ = [
    "IMPL",
    "canonical_labelling",
    "orbits",
    "relabel_code",
    "reach",
    "noncut_mask",
    "augment_candidates",
    "find_k4",
    "find_theta5",
    "find_pattern",
]
