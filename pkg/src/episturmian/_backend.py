"""Kernel selection: the compiled extension when importable, else the fallback.

Set ``EPISTURMIAN_PURE=1`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _pure

if os.environ.get("EPISTURMIAN_PURE", "") not in ("", "0"):
    _compiled = None
else:
    try:
        from . import _kernels as _compiled
    except ImportError:
        _compiled = None

BACKEND = "compiled" if _compiled is not None else "pure"
kernels = _compiled if _compiled is not None else _pure

BudgetExceeded = _pure.BudgetExceeded
max_repetition = kernels.max_repetition


def dfs_max(d: int, n: int, budget: int):
    # int64 entries are bounded by d * 2^n
    if _compiled is not None and n + d.bit_length() < 62:
        return _compiled.dfs_max(d, n, budget)
    return _pure.dfs_max(d, n, budget)
