"""Exact linear solve by fraction-free (Bareiss) elimination."""
from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

from ..errors import InconsistentSystemError, MalformedInputError, UnderdeterminedSystemError


def _integer_rows(A, b):
    rows = []
    for row, rhs in zip(A, b):
        vals = [Fraction(x) for x in row] + [Fraction(rhs)]
        d = lcm(*(v.denominator for v in vals))
        rows.append([int(v * d) for v in vals])
    return rows


def rank_and_echelon(rows: list[list[int]], ncols: int):
    """In-place Bareiss elimination on the first ncols columns; returns pivot columns."""
    m = len(rows)
    pivots = []
    prev = 1
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, m) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        for i in range(m):
            if i == r:
                continue
            if i < r:
                continue
            a = rows[i][c]
            rows[i] = [(piv * x - a * y) // prev for x, y in zip(rows[i], rows[r])]
        prev = piv
        pivots.append(c)
        r += 1
        if r == m:
            break
    return pivots


def solve_linear_exact(A: Sequence[Sequence], b: Sequence) -> list[Fraction]:
    """Unique exact solution of A x = b.

    Raises InconsistentSystemError when no solution exists and
    UnderdeterminedSystemError (carrying the rank) when it is not unique.
    """
    m = len(A)
    if len(b) != m:
        raise MalformedInputError(f"matrix has {m} rows but right-hand side has {len(b)} entries")
    n = len(A[0]) if m else 0
    if any(len(row) != n for row in A):
        raise MalformedInputError("ragged matrix")
    if n == 0:
        if any(Fraction(x) for x in b):
            raise InconsistentSystemError("nonzero right-hand side with no unknowns")
        return []
    rows = _integer_rows(A, b)
    pivots = rank_and_echelon(rows, n)
    rank = len(pivots)
    for row in rows[rank:]:
        if row[n]:
            raise InconsistentSystemError(f"system is inconsistent (rank {rank})")
    if rank < n:
        raise UnderdeterminedSystemError(f"system has rank {rank} < {n} unknowns", rank=rank)
    x = [Fraction(0)] * n
    for i in reversed(range(n)):
        row = rows[i]
        s = Fraction(row[n]) - sum(row[j] * x[j] for j in range(i + 1, n))
        x[i] = s / row[i]
    return x
