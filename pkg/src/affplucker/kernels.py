"""Kernel backend selection.

The compiled extension is used when importable; set ``AFFPLUCKER_PURE_PYTHON=1``
to force the pure-Python fallback.
"""

import os

BACKEND = "python"

if os.environ.get("AFFPLUCKER_PURE_PYTHON", "") not in ("", "0"):
    from ._kernels_py import count_preserved_pairs, is_automorphism, refine
else:
    try:
        from ._kernels import count_preserved_pairs, is_automorphism, refine

        BACKEND = "cython"
    except ImportError:
        from ._kernels_py import count_preserved_pairs, is_automorphism, refine

__all__ = ["BACKEND", "count_preserved_pairs", "is_automorphism", "refine"]
