"""A3: the triple residue and the d_{r,s,t} expansion coefficients.

The residue order is z3, then z2, then z1 (innermost first), following the
measure dz3 dz2 dz1.  The expansion uses the basis (1-z1)^r (1-z2)^s
(1-z3)^t in the region |1-z1| < |1-z2| < |1-z3|.
"""
from __future__ import annotations

from functools import lru_cache

from ..algebra.laurent import LaurentPolynomial
from ..algebra.ratfunc import RationalFunction
from ..algebra.series import series_expand
from ..algebra.variables import x, z
from ..errors import ConsistencyError, MalformedInputError
from ..residue import Integrand
from .common import CoeffTable, ThomInstance, evaluate_residue, m_factors

_ONE = LaurentPolynomial.constant(1)
A3_BOUND = 4


def a3_integrand(inst: ThomInstance) -> Integrand:
    Z = [None] + [LaurentPolynomial.gen(z(i)) for i in (1, 2, 3)]
    inv = [None] + [LaurentPolynomial.gen(z(i), -1) for i in (1, 2, 3)]
    factors = [
        (_ONE - Z[2] * inv[1], 1), (_ONE - Z[3] * inv[1], 1), (_ONE - Z[3] * inv[2], 1),
        (_ONE - Z[2] * inv[1] ** 2, -1), (_ONE - Z[3] * inv[1] ** 2, -1),
        (_ONE - Z[3] * inv[1] * inv[2], -1),
    ]
    for i in (1, 2, 3):
        factors += m_factors(z(i), inst)
    return Integrand(inv[1] * inv[2] * inv[3], factors)


@lru_cache(maxsize=None)
def _ktp_a3(inst: ThomInstance) -> LaurentPolynomial:
    return evaluate_residue(a3_integrand(inst), [z(3), z(2), z(1)], "KTp_A3")


def ktp_a3(inst: ThomInstance, bound: int = A3_BOUND) -> LaurentPolynomial:
    if inst.a > bound or inst.b > bound:
        raise MalformedInputError(f"a and b must be at most {bound}")
    return _ktp_a3(inst)


def a3_kernel() -> RationalFunction:
    """1/((1-z2/z1^2)(1-z3/z1^2)(1-z3/(z1 z2))) with z_i = 1 - x_i."""
    X1, X2, X3 = (LaurentPolynomial.gen(x(i)) for i in (1, 2, 3))
    u1, u2 = _ONE - X1, _ONE - X2
    num = u1 ** 5 * u2
    dens = [(X2 - X1 * 2 + X1 * X1, 1), (X3 - X1 * 2 + X1 * X1, 1), (X3 - X1 - X2 + X1 * X2, 1)]
    return RationalFunction.from_factors(num, dens)


def d3_table(bounds: tuple[int, tuple[int, int], tuple[int, int] | None]) -> CoeffTable:
    """d_{r,s,t} for r <= r_max, s in s_range, t in t_range (None: every t).

    Expands in x1 first, then x2; each coefficient of x1^r x2^s is then a
    Laurent polynomial in x3.
    """
    r_max, (s_min, s_max), t_range = bounds
    if r_max < 0 or s_min > s_max or (t_range is not None and t_range[0] > t_range[1]):
        raise MalformedInputError("empty or malformed bounds")
    entries = {}
    for r, cs in row_polynomials(r_max, s_max).items():
        for s, poly in cs.items():
            if s < s_min:
                continue
            for mono, c in poly.items():
                t = mono.get(x(3), 0)
                if t_range is None or t_range[0] <= t <= t_range[1]:
                    entries[(r, s, t)] = c
    return CoeffTable(entries, ("r", "s", "t"))


def row_polynomials(r_max: int, s_max: int) -> dict[int, dict[int, LaurentPolynomial]]:
    """r -> s -> the coefficient of x1^r x2^s, a Laurent polynomial in x3."""
    outer = series_expand(a3_kernel(), x(1), r_max)
    out: dict[int, dict[int, LaurentPolynomial]] = {}
    for r in range(max(outer.valuation, 0), r_max + 1):
        c = outer.coefficient(r)
        if isinstance(c, LaurentPolynomial) and c.is_zero():
            continue
        inner = series_expand(c, x(2), s_max)
        row = {}
        for s in range(inner.valuation, s_max + 1):
            cs = inner.coefficient(s)
            if isinstance(cs, RationalFunction):
                if not cs.is_laurent():
                    raise ConsistencyError(f"coefficient of x1^{r} x2^{s} is not a Laurent polynomial in x3")
                cs = cs.to_laurent()
            if not cs.is_zero():
                row[s] = cs
        out[r] = row
    return out
