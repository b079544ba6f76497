"""Shared pieces for the Thom polynomial residues.

Domain roots use the ``epsilon`` family (written alpha or epsilon in the
literature, they play the same role); target roots use ``beta``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from ..algebra.laurent import LaurentPolynomial
from ..algebra.variables import Variable, alpha, beta, epsilon, z
from ..errors import ConsistencyError, MalformedInputError
from ..residue import Integrand, ResidueSpec, combine, iterated_terms

_ONE = LaurentPolynomial.constant(1)


@dataclass(frozen=True)
class ThomInstance:
    """Map germs (C^a, 0) -> (C^b, 0)."""

    a: int
    b: int

    def __post_init__(self):
        if self.a < 1:
            raise MalformedInputError(f"source dimension must be positive, got {self.a}")
        if self.b < self.a:
            raise MalformedInputError(f"need a <= b, got a={self.a}, b={self.b}")

    @property
    def l(self) -> int:
        return self.b - self.a


def m_factors(zv: Variable, inst: ThomInstance) -> list[tuple[LaurentPolynomial, int]]:
    """prod_j (1 - z/beta_j) / prod_i (1 - z/eps_i) as integrand factors."""
    Z = LaurentPolynomial.gen(zv)
    out = [(_ONE - Z * LaurentPolynomial.gen(beta(j), -1), 1) for j in range(1, inst.b + 1)]
    out += [(_ONE - Z * LaurentPolynomial.gen(epsilon(i), -1), -1) for i in range(1, inst.a + 1)]
    return out


def evaluate_residue(f: Integrand, order: Sequence[Variable], what: str) -> LaurentPolynomial:
    """Iterated residue at {0, infinity}, innermost variable first; must be a Laurent polynomial."""
    val = combine(iterated_terms(f, [ResidueSpec(v) for v in order]))
    if not val.is_laurent():
        raise ConsistencyError(f"{what} did not reduce to a Laurent polynomial: {val}")
    out = val.to_laurent()
    if any(v.family == "z" for v in out.variables()):
        raise ConsistencyError(f"residue variables survive in {what}")
    return out


def inverted_g(I: Sequence[int], inst: ThomInstance) -> LaurentPolynomial:
    """g_I(eps^-1; beta^-1): g_residue with alpha_i -> eps_i^-1 and beta_j -> beta_j^-1."""
    from ..grothendieck.gpoly import g_residue

    g = g_residue(I, inst.a, inst.b)
    bind = {alpha(i): (1, {epsilon(i): -1}) for i in range(1, inst.a + 1)}
    bind.update({beta(j): (1, {beta(j): -1}) for j in range(1, inst.b + 1)})
    return g.subs_monomial(bind)


def z_vars(r: int) -> list[Variable]:
    return [z(i) for i in range(1, r + 1)]


class CoeffTable:
    """Immutable table of integer coefficients keyed by integer tuples."""

    def __init__(self, entries: Mapping[tuple[int, ...], int], names: Sequence[str]):
        self._names = tuple(names)
        data = {}
        for key, v in entries.items():
            key = tuple(int(x) for x in key)
            if len(key) != len(self._names):
                raise MalformedInputError(f"key {key} does not match columns {self._names}")
            v = Fraction(v)
            if v.denominator != 1:
                raise ConsistencyError(f"non-integer table entry {v} at {key}")
            if v:
                data[key] = int(v)
        self._e = data

    @property
    def names(self) -> tuple[str, ...]:
        return self._names

    @property
    def entries(self) -> dict[tuple[int, ...], int]:
        return dict(self._e)

    def __getitem__(self, key) -> int:
        return self._e.get(tuple(key), 0)

    def __len__(self):
        return len(self._e)

    def __eq__(self, other):
        if not isinstance(other, CoeffTable):
            return NotImplemented
        return self._names == other._names and self._e == other._e

    def items(self) -> list[tuple[tuple[int, ...], int]]:
        return sorted(self._e.items())

    def to_json_obj(self) -> list[dict]:
        return [dict(zip(self._names, k), value=v) for k, v in self.items()]

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    def __str__(self):
        if self._names[:2] == ("r", "s") and len(self._names) == 2:
            return _grid(self._e)
        return "\n".join(" ".join(f"{n}={x}" for n, x in zip(self._names, k)) + f" : {v}"
                         for k, v in self.items())


def _grid(e: dict) -> str:
    """Rows x2^s (s = -1, -2, ...), columns x1^r, as in the A2 grid."""
    if not e:
        return "(empty)"
    rs = sorted({k[0] for k in e})
    ss = sorted({k[1] for k in e}, reverse=True)
    width = max(len(str(v)) for v in e.values()) + 1
    lines = ["s\\r".rjust(5) + "".join(str(r).rjust(width + 1) for r in rs)]
    for s in ss:
        cells = [str(e[(r, s)]) if (r, s) in e else "" for r in rs]
        lines.append(str(s).rjust(5) + "".join(c.rjust(width + 1) for c in cells).rstrip())
    return "\n".join(lines)
