"""Select the compiled kernels when available, else the pure-Python ones.

Set ``POSET_ENTROPY_PURE=1`` to force the fallback (used by the benchmark and
by the kernel-parity tests).
"""

from __future__ import annotations

import os

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py

if not os.environ.get("POSET_ENTROPY_PURE"):
    try:
        from . import _kernels as _compiled
    except ImportError:  # extension not built
        pass
    else:
        _impl = _compiled
        BACKEND = "cython"

# compiled kernels use fixed-width state; fall back above these sizes
_LIMITS = {"downset_count": 20, "bruteforce_count": 12, "canonical_code": 11}


def _dispatch(name: str, pred: list[int], n: int) -> int:
    fn = getattr(_impl, name)
    if _impl is not _kernels_py and n > _LIMITS[name]:
        fn = getattr(_kernels_py, name)
    return fn(list(pred), n)


def downset_count(pred: list[int], n: int) -> int:
    return _dispatch("downset_count", pred, n)


def bruteforce_count(pred: list[int], n: int) -> int:
    return _dispatch("bruteforce_count", pred, n)


def canonical_code(pred: list[int], n: int) -> int:
    return _dispatch("canonical_code", pred, n)
