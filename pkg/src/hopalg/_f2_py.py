"""Pure-Python GF(2) elimination on rows stored as int bitsets.

Column ``j`` of a row is bit ``j``.  Pivots are taken leftmost column first,
topmost row first, so the compiled kernel must reproduce these results bit
for bit.
"""

from __future__ import annotations

NAME = "python"


def rref(rows: list[int], ncols: int) -> tuple[list[int], list[int]]:
    """Reduced row echelon form; returns the nonzero rows and their pivot columns."""
    work = list(rows)
    n = len(work)
    pivots: list[int] = []
    rank = 0
    for col in range(ncols):
        if rank == n:
            break
        bit = 1 << col
        for r in range(rank, n):
            if work[r] & bit:
                break
        else:
            continue
        work[rank], work[r] = work[r], work[rank]
        prow = work[rank]
        for i in range(n):
            if i != rank and work[i] & bit:
                work[i] ^= prow
        pivots.append(col)
        rank += 1
    return work[:rank], pivots


def left_kernel(rows: list[int], ncols: int) -> list[int]:
    """Basis of ``{x : sum_i x_i rows[i] = 0}`` as bitsets of length ``len(rows)``."""
    n = len(rows)
    work = [row | (1 << (ncols + i)) for i, row in enumerate(rows)]
    rank = 0
    for col in range(ncols):
        if rank == n:
            break
        bit = 1 << col
        for r in range(rank, n):
            if work[r] & bit:
                break
        else:
            continue
        work[rank], work[r] = work[r], work[rank]
        prow = work[rank]
        for i in range(rank + 1, n):
            if work[i] & bit:
                work[i] ^= prow
        rank += 1
    return [work[i] >> ncols for i in range(rank, n)]
