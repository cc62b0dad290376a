"""Pure-Python implementations of the enumeration kernels.

Integers are used as packed bit vectors.  Every function here has a compiled
twin in ``_kernels_ext.pyx`` with the same signature and results; the
package picks one at import time (see ``_backend``).
"""

from __future__ import annotations

from typing import Sequence

import numpy as np


def span_min_weight(v: int, basis: Sequence[int]) -> int:
    """Minimum of ``popcount(v ^ w)`` over every ``w`` in the span of ``basis``.

    Walks the span in Gray-code order, so each step is a single XOR.
    """
    cur = v
    best_w = cur.bit_count()
    k = len(basis)
    for step in range(1, 1 << k):
        cur ^= basis[(step & -step).bit_length() - 1]
        w = cur.bit_count()
        if w < best_w:
            best_w = w
            if w == 0:
                break
    return best_w


def min_nonzero_span_weight(gens: Sequence[int]) -> int:
    """Minimum weight of a nonzero element of the span of ``gens`` (-1 if none)."""
    cur = 0
    best = -1
    for step in range(1, 1 << len(gens)):
        cur ^= gens[(step & -step).bit_length() - 1]
        w = cur.bit_count()
        if w and (best < 0 or w < best):
            best = w
            if w == 1:
                break
    return best


def coset_leaders(col_syndromes: Sequence[int], n: int, r: int) -> list[int]:
    """Minimum-weight error pattern for every syndrome ``0 .. 2**r - 1``.

    ``col_syndromes[i]`` is the syndrome of the vector with only integer bit
    ``i`` set.  Patterns are tried by increasing weight and, inside one weight,
    by increasing integer value, so ties resolve to the numerically smallest
    pattern.  Unreachable syndromes map to -1.
    """
    size = 1 << r
    table = [-1] * size
    table[0] = 0
    filled = 1
    for w in range(1, n + 1):
        if filled == size:
            break
        e = (1 << w) - 1
        limit = 1 << n
        while e < limit:
            s = 0
            rest = e
            while rest:
                low = rest & -rest
                s ^= col_syndromes[low.bit_length() - 1]
                rest ^= low
            if table[s] < 0:
                table[s] = e
                filled += 1
                if filled == size:
                    break
            # next integer with the same popcount
            c = e & -e
            nxt = e + c
            e = (((nxt ^ e) >> 2) // c) | nxt
    return table


def _subset_masks(length: int, size: int) -> np.ndarray:
    if size == 0:
        return np.zeros(1, dtype=np.uint64)
    masks = []
    e = (1 << size) - 1
    limit = 1 << length
    while e < limit:
        masks.append(e)
        c = e & -e
        nxt = e + c
        e = (((nxt ^ e) >> 2) // c) | nxt
    return np.array(masks, dtype=np.uint64)


_mask_cache: dict[tuple[int, int], np.ndarray] = {}


def split_event_count(pool: int, length: int, n: int, info_min: int, test_max: int) -> int:
    """Count size-``n`` subsets S of ``length`` positions with
    ``popcount(pool & S) >= info_min`` and ``popcount(pool & ~S) <= test_max``.
    """
    key = (length, n)
    masks = _mask_cache.get(key)
    if masks is None:
        masks = _mask_cache[key] = _subset_masks(length, n)
    total = pool.bit_count()
    inside = np.bitwise_count(masks & np.uint64(pool)).astype(np.int64)
    hit = (inside >= info_min) & ((total - inside) <= test_max)
    return int(np.count_nonzero(hit))
