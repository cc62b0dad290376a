# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled enumeration kernels; mirrors ``_kernels_py`` exactly.

Vectors must fit in 63 bits.  The Python wrappers in ``_backend`` route
anything longer to the pure-Python implementation.
"""

from libc.stdlib cimport malloc, free

ctypedef unsigned long long u64


cdef extern from *:
    int popcount64 "__builtin_popcountll"(u64 x) nogil
    int ctz64 "__builtin_ctzll"(u64 x) nogil


cdef u64* _pack(object values, Py_ssize_t k) except NULL:
    cdef u64* out = <u64*> malloc((k if k > 0 else 1) * sizeof(u64))
    if out == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(k):
        out[i] = <u64> values[i]
    return out


def span_min_weight(v, basis):
    cdef Py_ssize_t k = len(basis)
    cdef u64* b = _pack(basis, k)
    cdef u64 cur = <u64> v
    cdef int best = popcount64(cur)
    cdef int w
    cdef u64 step, stop = (<u64> 1) << k
    with nogil:
        step = 1
        while step < stop and best > 0:
            cur ^= b[ctz64(step)]
            w = popcount64(cur)
            if w < best:
                best = w
            step += 1
    free(b)
    return best


def min_nonzero_span_weight(gens):
    cdef Py_ssize_t k = len(gens)
    cdef u64* g = _pack(gens, k)
    cdef u64 cur = 0
    cdef int best = -1
    cdef int w
    cdef u64 step, stop = (<u64> 1) << k
    with nogil:
        step = 1
        while step < stop:
            cur ^= g[ctz64(step)]
            w = popcount64(cur)
            if w and (best < 0 or w < best):
                best = w
                if w == 1:
                    break
            step += 1
    free(g)
    return best


def coset_leaders(col_syndromes, int n, int r):
    cdef u64* cols = _pack(col_syndromes, n)
    cdef Py_ssize_t size = (<Py_ssize_t> 1) << r
    cdef long long* table = <long long*> malloc(size * sizeof(long long))
    if table == NULL:
        free(cols)
        raise MemoryError()
    cdef Py_ssize_t i, filled = 1
    cdef int w
    cdef u64 e, c, nxt, rest, s, limit = (<u64> 1) << n
    with nogil:
        for i in range(size):
            table[i] = -1
        table[0] = 0
        for w in range(1, n + 1):
            if filled == size:
                break
            e = ((<u64> 1) << w) - 1
            while e < limit:
                s = 0
                rest = e
                while rest:
                    s ^= cols[ctz64(rest)]
                    rest &= rest - 1
                if table[s] < 0:
                    table[s] = <long long> e
                    filled += 1
                    if filled == size:
                        break
                c = e & (~e + 1)
                nxt = e + c
                e = (((nxt ^ e) >> 2) // c) | nxt
    out = [table[i] for i in range(size)]
    free(table)
    free(cols)
    return out


def split_event_count(pool, int length, int n, int info_min, int test_max):
    cdef u64 p = <u64> pool
    cdef int total = popcount64(p)
    cdef int inside
    cdef long long count = 0
    cdef u64 e, c, nxt, limit = (<u64> 1) << length
    with nogil:
        if n == 0:
            if 0 >= info_min and total <= test_max:
                count = 1
        else:
            e = ((<u64> 1) << n) - 1
            while e < limit:
                inside = popcount64(p & e)
                if inside >= info_min and total - inside <= test_max:
                    count += 1
                c = e & (~e + 1)
                nxt = e + c
                e = (((nxt ^ e) >> 2) // c) | nxt
    return count
