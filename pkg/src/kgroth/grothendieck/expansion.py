"""Signed sums of G's and expansion of polynomials in the G basis."""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from ..algebra.laurent import LaurentPolynomial
from ..algebra.linalg import solve_linear_exact
from ..errors import (
    BoxTooSmallError, IndependenceError, InconsistentSystemError, IntegralityError,
    MalformedInputError, UnderdeterminedSystemError,
)
from .permutations import canonical_sequence, is_partition, partitions_in_box


class GExpansion:
    """Finite sum of coeff * G_I, keys are integer sequences without trailing zeros."""

    __slots__ = ("_c",)

    def __init__(self, coefficients: Mapping[Sequence[int], int] | Iterable = ()):
        items = coefficients.items() if isinstance(coefficients, Mapping) else coefficients
        acc: dict[tuple[int, ...], int] = {}
        for key, c in items:
            c = Fraction(c)
            if c.denominator != 1:
                raise IntegralityError(f"non-integer coefficient {c} for G_{list(key)}")
            key = canonical_sequence(key)
            acc[key] = acc.get(key, 0) + int(c)
        self._c = {k: v for k, v in acc.items() if v}

    @property
    def coefficients(self) -> dict[tuple[int, ...], int]:
        return dict(self._c)

    def items(self) -> list[tuple[tuple[int, ...], int]]:
        return sorted(self._c.items())

    def get(self, key: Sequence[int]) -> int:
        return self._c.get(canonical_sequence(key), 0)

    def __len__(self):
        return len(self._c)

    def __iter__(self):
        return iter(sorted(self._c))

    @property
    def is_partition_keyed(self) -> bool:
        return all(is_partition(k) for k in self._c)

    def __add__(self, other: "GExpansion") -> "GExpansion":
        return GExpansion(list(self._c.items()) + list(other._c.items()))

    def __sub__(self, other: "GExpansion") -> "GExpansion":
        return self + other.scale(-1)

    def scale(self, c: int) -> "GExpansion":
        return GExpansion({k: v * c for k, v in self._c.items()})

    def __eq__(self, other):
        if isinstance(other, GExpansion):
            return self._c == other._c
        if isinstance(other, Mapping):
            return self == GExpansion(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def __repr__(self):
        return f"GExpansion({dict(self.items())})"

    def straightened(self) -> "GExpansion":
        from .straighten import straighten

        acc = GExpansion()
        for key, c in self._c.items():
            acc = acc + straighten(key).scale(c)
        return acc

    def evaluate(self, values) -> LaurentPolynomial:
        """sum c_I * values(I) for a callable giving the polynomial of G_I."""
        acc = LaurentPolynomial()
        for key, c in self.items():
            acc = acc + values(key) * c
        return acc

    # rendering --------------------------------------------------------

    def to_json_obj(self) -> list[dict]:
        return [{"index": list(k), "coeff": c} for k, c in self.items()]

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json(cls, text: str) -> "GExpansion":
        return cls({tuple(row["index"]): row["coeff"] for row in json.loads(text)})

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for i, (k, c) in enumerate(self.items()):
            name = "G[" + ",".join(map(str, k)) + "]"
            a = abs(c)
            body = name if a == 1 else f"{a}*{name}"
            if i == 0:
                parts.append(f"-{body}" if c < 0 else body)
            else:
                parts.append(f" - {body}" if c < 0 else f" + {body}")
        return "".join(parts)

    def to_latex(self) -> str:
        """Group terms by degree, sign factored out of each group, as in the A2 tables."""
        if not self._c:
            return "0"
        groups: dict[int, list] = {}
        for k, c in self._c.items():
            groups.setdefault(sum(k), []).append((k, c))
        out = []
        for d in sorted(groups):
            terms = sorted(groups[d], key=lambda kc: (kc[0][0] if kc[0] else 0, kc[0]))
            signs = {c > 0 for _, c in terms}
            if len(signs) == 1:
                neg = not signs.pop()
                body = "+".join(_latex_term(k, abs(c)) for k, c in terms)
                if len(terms) > 1:
                    body = r"\big(" + body + r"\big)"
            else:
                neg = False
                body = r"\big(" + "".join(
                    (("-" if c < 0 else ("+" if j else "")) + _latex_term(k, abs(c)))
                    for j, (k, c) in enumerate(terms)) + r"\big)"
            if not out:
                out.append(("-" if neg else "") + body)
            else:
                out.append(("-" if neg else "+") + body)
        return "".join(out)


def _latex_term(key, a: int) -> str:
    idx = ",".join(map(str, key))
    g = f"G_{idx}" if len(idx) == 1 else f"G_{{{idx}}}"
    return g if a == 1 else f"{a}{g}"


# --- basis expansion --------------------------------------------------------


def _gvalue(lam, k, l):
    from .gpoly import g_residue

    return g_residue(lam, k, l)


def expand_in_G_basis(f: LaurentPolynomial, k: int, l: int, box: tuple[int, int]) -> GExpansion:
    """Integer coefficients c with f = sum c_lam G_lam^{k,l}, lam in the box."""
    rows, cols = box
    if rows < 0 or cols < 0:
        raise MalformedInputError("box dimensions must be nonnegative")
    return expand_in_partitions(f, k, l, list(partitions_in_box(rows, cols)), f"{rows}x{cols} box")


def expand_in_partitions(f: LaurentPolynomial, k: int, l: int, basis: Sequence[Sequence[int]],
                         where: str = "given set") -> GExpansion:
    """Integer coefficients c with f = sum c_lam G_lam^{k,l}, lam in ``basis``."""
    basis = [canonical_sequence(lam) for lam in basis]
    if not all(is_partition(lam) for lam in basis):
        raise MalformedInputError("basis entries must be partitions")
    polys = [_gvalue(lam, k, l) for lam in basis]
    n = len(basis)
    monos = set(f.terms)
    for p in polys:
        monos.update(p.terms)
    # pick rows greedily until the coefficient matrix has full column rank
    echelon: list[tuple[int, list[Fraction]]] = []
    chosen = []
    for m in sorted(monos):
        row = [Fraction(p.terms.get(m, 0)) for p in polys] + [Fraction(f.terms.get(m, 0))]
        red = row[:]
        for piv, er in echelon:
            if red[piv]:
                t = red[piv] / er[piv]
                red = [a - t * b for a, b in zip(red, er)]
        piv = next((j for j in range(n) if red[j]), None)
        if piv is None:
            if red[n]:
                raise BoxTooSmallError(f"polynomial is not in the span of G_lam for lam in the {where}")
            continue
        echelon.append((piv, red))
        chosen.append(row)
        if len(chosen) == n:
            break
    try:
        sol = solve_linear_exact([r[:n] for r in chosen], [r[n] for r in chosen]) if chosen or n == 0 else None
    except InconsistentSystemError as e:
        raise BoxTooSmallError(str(e)) from e
    except UnderdeterminedSystemError as e:
        raise IndependenceError(f"the G_lam in the box are not independent at k={k}, l={l} (rank {e.rank})") from e
    if sol is None or len(chosen) < n:
        raise IndependenceError(f"the G_lam in the box are not independent at k={k}, l={l}")
    for lam, c in zip(basis, sol):
        if c.denominator != 1:
            raise IntegralityError(f"coefficient {c} of G_{list(lam)} is not an integer")
    residual = f
    for p, c in zip(polys, sol):
        if c:
            residual = residual - p * c
    if not residual.is_zero():
        raise BoxTooSmallError(f"polynomial is not in the span of G_lam for lam in the {where}")
    return GExpansion({lam: int(c) for lam, c in zip(basis, sol) if c})


def multiply_G(I: Sequence[int], J: Sequence[int], k: int, l: int, box: tuple[int, int] | None = None) -> GExpansion:
    """Expansion of g_I * g_J in the G basis."""
    from .gpoly import g_residue

    f = g_residue(I, k, l) * g_residue(J, k, l)
    if box is None:
        length = len(canonical_sequence(I)) + len(canonical_sequence(J))
        # with l = 0 the G's longer than k vanish, so they can be left out
        box = (length if l else min(k, length),
               sum(max(x, 0) for x in I) + sum(max(x, 0) for x in J))
    return expand_in_G_basis(f, k, l, box)
