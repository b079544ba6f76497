"""Double stable Schur polynomials: residue form and Jacobi-Trudi."""
from __future__ import annotations

import itertools
from typing import Sequence

from ..algebra.laurent import LaurentPolynomial
from ..algebra.series import series_expand
from ..algebra.ratfunc import RationalFunction
from ..algebra.variables import abar, bbar, t, z
from ..errors import ConsistencyError
from ..residue import Integrand, Location, ResidueSpec, combine, iterated_terms
from .permutations import canonical_partition

_ONE = LaurentPolynomial.constant(1)


def schur_residue(I: Sequence[int], k: int, l: int) -> LaurentPolynomial:
    """(-1)^r Res_{z=infinity} of prod z_j^I_j prod_{j>i}(1 - z_i/z_j) prod_j prod(1+B_i/z_j)/prod(1+A_i/z_j) dz/z."""
    I = tuple(int(x) for x in I)
    r = len(I)
    Z = [LaurentPolynomial.gen(z(j)) for j in range(1, r + 1)]
    num = _ONE
    factors = []
    for j in range(1, r + 1):
        num = num * LaurentPolynomial.gen(z(j), I[j - 1] - 1)
        zinv = LaurentPolynomial.gen(z(j), -1)
        for i in range(1, l + 1):
            factors.append((_ONE + LaurentPolynomial.gen(bbar(i)) * zinv, 1))
        for i in range(1, k + 1):
            factors.append((_ONE + LaurentPolynomial.gen(abar(i)) * zinv, -1))
        for i in range(1, j):
            factors.append((_ONE - Z[i - 1] * zinv, 1))
    f = Integrand(num * (-1) ** r, factors)
    specs = [ResidueSpec(z(j), Location.INFINITY) for j in range(r, 0, -1)]
    val = combine(iterated_terms(f, specs))
    if not val.is_laurent():
        raise ConsistencyError("Schur residue is not a polynomial")
    return val.to_laurent()


def schur_c(k: int, l: int, top: int) -> list[LaurentPolynomial]:
    """c_0..c_top: coefficients of prod(1 + B_j t) / prod(1 + A_i t)."""
    T = LaurentPolynomial.gen(t())
    num = _ONE
    for j in range(1, l + 1):
        num = num * (_ONE + LaurentPolynomial.gen(bbar(j)) * T)
    den = [(_ONE + LaurentPolynomial.gen(abar(i)) * T, 1) for i in range(1, k + 1)]
    if top < 0:
        return []
    s = series_expand(RationalFunction.from_factors(num, den), t(), top)
    return [LaurentPolynomial.coerce(s.coefficient(m)) for m in range(top + 1)]


def jacobi_trudi(lam: Sequence[int], k: int, l: int) -> LaurentPolynomial:
    """det(c_{lam_i + j - i})."""
    lam = canonical_partition(lam)
    n = len(lam)
    if n == 0:
        return _ONE
    top = lam[0] + n
    c = schur_c(k, l, top)

    def entry(i, j):
        m = lam[i] + j - i
        if m < 0:
            return LaurentPolynomial()
        return c[m]

    acc = LaurentPolynomial()
    for perm in itertools.permutations(range(n)):
        sign = 1
        for a in range(n):
            for b in range(a + 1, n):
                if perm[a] > perm[b]:
                    sign = -sign
        term = _ONE
        for i in range(n):
            term = term * entry(i, perm[i])
            if term.is_zero():
                break
        acc = acc + term * sign
    return acc
