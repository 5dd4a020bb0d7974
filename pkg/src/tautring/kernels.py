"""Selects the compiled weighting-sum kernel when available.

Set ``TAUTRING_PURE=1`` to force the pure-Python implementation.
"""
from __future__ import annotations

import os

from . import _weightsum_py

BACKEND = "python"
weighting_sums = _weightsum_py.weighting_sums

if not os.environ.get("TAUTRING_PURE"):
    try:
        from . import _weightsum as _compiled
    except ImportError:
        pass
    else:
        weighting_sums = _compiled.weighting_sums
        BACKEND = "cython"

python_weighting_sums = _weightsum_py.weighting_sums
