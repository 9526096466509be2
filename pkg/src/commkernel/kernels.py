"""Kernel dispatch: the compiled extension when importable, else pure Python.

Set ``COMMKERNEL_PURE=1`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _pykernels

BACKEND = "python"
_compiled = None

if os.environ.get("COMMKERNEL_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _compiled  # type: ignore[attr-defined]
        BACKEND = "cython"
    except ImportError:
        _compiled = None


def signed_eulerian_count(n, src, tar, start):
    if _compiled is not None and len(src) <= 63:
        return _compiled.signed_eulerian_count(n, src, tar, start)
    return _pykernels.signed_eulerian_count(n, src, tar, start)


def rank_mod_p(rows, p):
    if _compiled is not None and 2 <= p < (1 << 63):
        return _compiled.rank_mod_p(rows, p)
    return _pykernels.rank_mod_p(rows, p)
