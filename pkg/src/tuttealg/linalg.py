"""Exact linear algebra over the rationals."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def rational_rank(rows: Sequence[Sequence]) -> int:
    """Rank of a matrix with rational entries, by fraction-exact Gaussian elimination."""
    mat = [[Fraction(x) for x in row] for row in rows]
    if not mat:
        return 0
    ncols = len(mat[0])
    rank = 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(mat)) if mat[i][col] != 0), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        pv = mat[rank][col]
        for i in range(rank + 1, len(mat)):
            f = mat[i][col]
            if f:
                factor = f / pv
                row_r = mat[rank]
                mat[i] = [a - factor * b for a, b in zip(mat[i], row_r)]
        rank += 1
        if rank == len(mat):
            break
    return rank
