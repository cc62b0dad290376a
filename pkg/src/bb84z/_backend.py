"""Kernel selection.

The compiled extension is used when it imports cleanly; otherwise the
pure-Python module takes over.  Setting ``BB84Z_PURE_PYTHON=1`` forces the
fallback.  Inputs wider than the compiled kernels' 63-bit words are always
routed to the fallback.
"""

from __future__ import annotations

import os

from . import _kernels_py

WORD_BITS = 63

if os.environ.get("BB84Z_PURE_PYTHON", "") not in ("", "0"):
    _ext = None
else:
    try:
        from . import _kernels_ext as _ext  # type: ignore[attr-defined]
    except ImportError:
        _ext = None

BACKEND = "cython" if _ext is not None else "python"


def available_backends() -> dict[str, object]:
    out: dict[str, object] = {"python": _kernels_py}
    if _ext is not None:
        out["cython"] = _ext
    return out


def _pick(width: int):
    if _ext is not None and width <= WORD_BITS:
        return _ext
    return _kernels_py


def span_min_weight(v: int, basis, width: int) -> int:
    return _pick(width).span_min_weight(v, basis)


def min_nonzero_span_weight(gens, width: int) -> int:
    return _pick(width).min_nonzero_span_weight(gens)


def coset_leaders(col_syndromes, n: int, r: int) -> list[int]:
    return _pick(max(n, r)).coset_leaders(col_syndromes, n, r)


def split_event_count(pool: int, length: int, n: int, info_min: int, test_max: int) -> int:
    return _pick(length).split_event_count(pool, length, n, info_min, test_max)
