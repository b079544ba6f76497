"""Straightening integer-sequence indices into partitions."""
from __future__ import annotations

from typing import Sequence

from ..errors import NonTerminationError
from .expansion import GExpansion
from .permutations import canonical_sequence

DEFAULT_FUEL = 10 ** 6


def _trim(seq: tuple[int, ...]) -> tuple[int, ...]:
    # G_{I,p} = G_{I,0} = G_I for a trailing p <= 0
    s = list(seq)
    while s and s[-1] <= 0:
        s.pop()
    return tuple(s)


def straighten(I: Sequence[int], fuel: int = DEFAULT_FUEL) -> GExpansion:
    """Rewrite G_I as a signed sum of partition-indexed G's.

    Leftmost ascent first:
    G_{I,p,q,J} = sum_{k=p+1}^{q} G_{I,q,k,J} - sum_{k=p+1}^{q-1} G_{I,q-1,k,J}.
    """
    memo: dict[tuple[int, ...], dict[tuple[int, ...], int]] = {}
    budget = [fuel]

    def go(seq: tuple[int, ...]) -> dict[tuple[int, ...], int]:
        seq = _trim(seq)
        if seq in memo:
            return memo[seq]
        i = next((i for i in range(len(seq) - 1) if seq[i] < seq[i + 1]), None)
        if i is None:
            out = {seq: 1}
            memo[seq] = out
            return out
        budget[0] -= 1
        if budget[0] < 0:
            raise NonTerminationError(f"straightening ran out of fuel at {list(seq)}", sequence=seq)
        head, p, q, tail = seq[:i], seq[i], seq[i + 1], seq[i + 2:]
        acc: dict[tuple[int, ...], int] = {}
        for k in range(p + 1, q + 1):
            for key, c in go(head + (q, k) + tail).items():
                acc[key] = acc.get(key, 0) + c
        for k in range(p + 1, q):
            for key, c in go(head + (q - 1, k) + tail).items():
                acc[key] = acc.get(key, 0) - c
        out = {key: c for key, c in acc.items() if c}
        memo[seq] = out
        return out

    result = go(tuple(int(x) for x in I))
    return GExpansion({canonical_sequence(k): c for k, c in result.items()})
