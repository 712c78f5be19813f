# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled GF(2) elimination; same pivot rules and outputs as ``_f2_py``."""

from libc.stdint cimport uint64_t
from libc.stdlib cimport calloc, free
from libc.string cimport memcpy

NAME = "compiled"


cdef uint64_t* _pack(list rows, Py_ssize_t nw, Py_ssize_t extra) except NULL:
    # extra > 0 appends an identity block starting at column `extra`
    cdef Py_ssize_t n = len(rows)
    cdef Py_ssize_t i
    cdef uint64_t* buf = <uint64_t*>calloc(max(n * nw, 1), sizeof(uint64_t))
    cdef bytes raw
    if buf == NULL:
        raise MemoryError()
    for i in range(n):
        row = rows[i]
        if extra >= 0:
            row = row | (<object>1 << (extra + i))
        try:
            raw = row.to_bytes(nw * 8, "little")
        except OverflowError:
            free(buf)
            raise ValueError("row has bits beyond the declared column count")
        memcpy(&buf[i * nw], <char*>raw, nw * 8)
    return buf


cdef object _unpack(uint64_t* buf, Py_ssize_t i, Py_ssize_t nw):
    return int.from_bytes((<char*>&buf[i * nw])[:nw * 8], "little")


cdef inline void _swap(uint64_t* buf, Py_ssize_t a, Py_ssize_t b, Py_ssize_t nw) noexcept nogil:
    cdef Py_ssize_t k
    cdef uint64_t tmp
    for k in range(nw):
        tmp = buf[a * nw + k]
        buf[a * nw + k] = buf[b * nw + k]
        buf[b * nw + k] = tmp


cdef Py_ssize_t _eliminate(uint64_t* buf, Py_ssize_t n, Py_ssize_t nw, Py_ssize_t ncols,
                           Py_ssize_t* pivots, bint full) noexcept nogil:
    cdef Py_ssize_t rank = 0, col, r, i, k, w, start
    cdef uint64_t bit
    cdef uint64_t* prow
    cdef uint64_t* row
    for col in range(ncols):
        if rank == n:
            break
        w = col >> 6
        bit = (<uint64_t>1) << (col & 63)
        r = rank
        while r < n and not (buf[r * nw + w] & bit):
            r += 1
        if r == n:
            continue
        if r != rank:
            _swap(buf, r, rank, nw)
        prow = &buf[rank * nw]
        start = 0 if full else rank + 1
        for i in range(start, n):
            if i == rank:
                continue
            row = &buf[i * nw]
            if row[w] & bit:
                for k in range(w, nw):
                    row[k] ^= prow[k]
        pivots[rank] = col
        rank += 1
    return rank


def rref(list rows, Py_ssize_t ncols):
    """Reduced row echelon form; returns the nonzero rows and their pivot columns."""
    cdef Py_ssize_t n = len(rows)
    cdef Py_ssize_t nw = (ncols + 63) // 64 if ncols > 0 else 1
    cdef Py_ssize_t rank, i
    cdef uint64_t* buf = _pack(rows, nw, -1)
    cdef Py_ssize_t* piv = <Py_ssize_t*>calloc(max(n, 1), sizeof(Py_ssize_t))
    if piv == NULL:
        free(buf)
        raise MemoryError()
    try:
        with nogil:
            rank = _eliminate(buf, n, nw, ncols, piv, True)
        out = [_unpack(buf, i, nw) for i in range(rank)]
        pivots = [piv[i] for i in range(rank)]
    finally:
        free(buf)
        free(piv)
    return out, pivots


def left_kernel(list rows, Py_ssize_t ncols):
    """Basis of ``{x : sum_i x_i rows[i] = 0}`` as bitsets of length ``len(rows)``."""
    cdef Py_ssize_t n = len(rows)
    cdef Py_ssize_t total = ncols + n
    cdef Py_ssize_t nw = (total + 63) // 64 if total > 0 else 1
    cdef Py_ssize_t rank, i
    cdef uint64_t* buf = _pack(rows, nw, ncols)
    cdef Py_ssize_t* piv = <Py_ssize_t*>calloc(max(n, 1), sizeof(Py_ssize_t))
    if piv == NULL:
        free(buf)
        raise MemoryError()
    try:
        with nogil:
            rank = _eliminate(buf, n, nw, ncols, piv, False)
        out = [_unpack(buf, i, nw) >> ncols for i in range(rank, n)]
    finally:
        free(buf)
        free(piv)
    return out
