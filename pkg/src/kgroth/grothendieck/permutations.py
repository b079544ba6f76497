"""Permutations, partitions and integer sequences."""
from __future__ import annotations

import itertools
from typing import Iterable, Iterator, Sequence

from ..errors import MalformedInputError


class Permutation:
    """A bijection of {1..n} stored as its one-line notation.

    Equality and hashing ignore trailing fixed points, so the embedding
    S_n -> S_{n+1} is invisible.
    """

    __slots__ = ("images",)

    def __init__(self, images: Iterable[int]):
        images = tuple(int(x) for x in images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise MalformedInputError(f"not a permutation: {list(images)}")
        self.images = images

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        text = text.strip()
        if "," in text:
            return cls(int(x) for x in text.split(","))
        if not text.isdigit():
            raise MalformedInputError(f"bad permutation {text!r}")
        return cls(int(ch) for ch in text)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(1, n + 1))

    @classmethod
    def longest(cls, n: int) -> "Permutation":
        return cls(range(n, 0, -1))

    def __len__(self):
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1] if i <= len(self.images) else i

    def _core(self) -> tuple[int, ...]:
        im = self.images
        n = len(im)
        while n and im[n - 1] == n:
            n -= 1
        return im[:n]

    def __eq__(self, other):
        return isinstance(other, Permutation) and self._core() == other._core()

    def __hash__(self):
        return hash(self._core())

    def __repr__(self):
        return f"Permutation({list(self.images)})"

    def __str__(self):
        if len(self.images) < 10:
            return "".join(map(str, self.images))
        return ",".join(map(str, self.images))

    def length(self) -> int:
        im = self.images
        return sum(1 for i in range(len(im)) for j in range(i + 1, len(im)) if im[i] > im[j])

    def code(self) -> tuple[int, ...]:
        """Lehmer code c_i = #{j > i : w(j) < w(i)}."""
        im = self.images
        return tuple(sum(1 for j in range(i + 1, len(im)) if im[j] < im[i]) for i in range(len(im)))

    def descents(self) -> list[int]:
        im = self.images
        return [i + 1 for i in range(len(im) - 1) if im[i] > im[i + 1]]

    def ascents(self) -> list[int]:
        im = self.images
        return [i + 1 for i in range(len(im) - 1) if im[i] < im[i + 1]]

    def times_s(self, i: int) -> "Permutation":
        """w s_i: swap positions i and i+1."""
        im = list(self.images)
        if i >= len(im):
            im.extend(range(len(im) + 1, i + 2))
        im[i - 1], im[i] = im[i], im[i - 1]
        return Permutation(im)

    def shifted(self, m: int) -> "Permutation":
        """1^m x w."""
        return Permutation(list(range(1, m + 1)) + [x + m for x in self.images])

    def padded(self, n: int) -> "Permutation":
        if n < len(self.images):
            raise MalformedInputError("cannot shrink a permutation")
        return Permutation(list(self.images) + list(range(len(self.images) + 1, n + 1)))

    def is_dominant(self) -> bool:
        c = self.code()
        return all(c[i] >= c[i + 1] for i in range(len(c) - 1))

    def grassmannian_data(self) -> tuple[tuple[int, ...], int] | None:
        """(partition, descent position) if w has at most one descent."""
        d = self.descents()
        if len(d) > 1:
            return None
        if not d:
            return (), 0
        p = d[0]
        lam = tuple(self.images[p - i] - (p + 1 - i) for i in range(1, p + 1))
        return canonical_partition(lam), p


def from_code(code: Sequence[int]) -> Permutation:
    avail = list(range(1, len(code) + 1))
    out = []
    for c in code:
        if c >= len(avail):
            raise MalformedInputError(f"invalid Lehmer code {list(code)}")
        out.append(avail.pop(c))
    return Permutation(out)


# --- partitions and sequences -------------------------------------------


def canonical_sequence(seq: Sequence[int]) -> tuple[int, ...]:
    """Integer sequence with trailing zeros stripped."""
    s = list(int(x) for x in seq)
    while s and s[-1] == 0:
        s.pop()
    return tuple(s)


def is_partition(seq: Sequence[int]) -> bool:
    return all(x >= 0 for x in seq) and all(seq[i] >= seq[i + 1] for i in range(len(seq) - 1))


def canonical_partition(parts: Sequence[int]) -> tuple[int, ...]:
    parts = canonical_sequence(parts)
    if not is_partition(parts):
        raise MalformedInputError(f"not a partition: {list(parts)}")
    return parts


def partition_length(lam: Sequence[int]) -> int:
    return len(canonical_sequence(lam))


def parse_sequence(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise MalformedInputError(f"bad integer list {text!r}") from None


def partitions_in_box(rows: int, cols: int) -> Iterator[tuple[int, ...]]:
    """All partitions with at most `rows` parts, each at most `cols`, smallest first."""
    out = []
    for parts in itertools.combinations_with_replacement(range(cols, -1, -1), rows):
        out.append(canonical_sequence(parts))
    out.sort(key=lambda p: (sum(p), p))
    return iter(out)


def grassmannian_perm(lam: Sequence[int], p: int) -> Permutation:
    """w(i) = i + lam_{p+1-i} for i <= p, the remaining values increasing."""
    lam = canonical_partition(lam)
    if p < len(lam):
        raise MalformedInputError(f"descent position {p} is smaller than the length of {list(lam)}")
    padded = list(lam) + [0] * (p - len(lam))
    head = [i + padded[p - i] for i in range(1, p + 1)]
    n = max(head) if head else 0
    n = max(n, p)
    rest = [v for v in range(1, n + 1) if v not in set(head)]
    return Permutation(head + rest)
