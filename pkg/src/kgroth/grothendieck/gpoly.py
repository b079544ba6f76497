"""Grothendieck polynomials as iterated residues, and the S_r-sum oracle."""
from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Sequence

from ..algebra.laurent import LaurentPolynomial
from ..algebra.variables import alpha, beta, z
from ..errors import ConsistencyError, MalformedInputError
from ..residue import Integrand, ResidueSpec, combine, iterated_terms
from .divided import divide_by_difference
from .permutations import canonical_partition

_ONE = LaurentPolynomial.constant(1)


def g_integrand(I: Sequence[int], k: int, l: int) -> Integrand:
    """prod (1-z_j)^(I_j-j) prod_{i>j}(1-z_i/z_j) M_{k,l}(z), including the dz/z measure."""
    r = len(I)
    Z = [LaurentPolynomial.gen(z(j)) for j in range(1, r + 1)]
    factors = []
    num = _ONE
    for j in range(1, r + 1):
        zj = Z[j - 1]
        num = num * LaurentPolynomial.gen(z(j), -1)
        factors.append((_ONE - zj, I[j - 1] - j - (l - k)))
        for i in range(1, l + 1):
            factors.append((_ONE - zj * LaurentPolynomial.gen(beta(i)), 1))
        for i in range(1, k + 1):
            factors.append((_ONE - zj * LaurentPolynomial.gen(alpha(i)), -1))
        for i in range(j + 1, r + 1):
            factors.append((_ONE - Z[i - 1] * LaurentPolynomial.gen(z(j), -1), 1))
    return Integrand(num, factors)


def g_specs(r: int) -> list[ResidueSpec]:
    # Res_{z_1} ... Res_{z_r}: z_r is innermost
    return [ResidueSpec(z(j)) for j in range(r, 0, -1)]


@lru_cache(maxsize=None)
def _g_cached(I: tuple[int, ...], k: int, l: int) -> LaurentPolynomial:
    f = g_integrand(I, k, l)
    val = combine(iterated_terms(f, g_specs(len(I))))
    if not val.is_laurent():
        raise ConsistencyError(f"g_{list(I)} did not reduce to a Laurent polynomial: {val}")
    out = val.to_laurent()
    if any(v.family == "z" for v in out.variables()):
        raise ConsistencyError("residue variables survive in g")
    return out


def g_residue(I: Sequence[int], k: int, l: int) -> LaurentPolynomial:
    """g_I(a_1..a_k; b_1..b_l) by the iterated residue at {0, infinity}."""
    I = tuple(int(x) for x in I)
    if k < 0 or l < 0:
        raise MalformedInputError("k and l must be nonnegative")
    return _g_cached(I, k, l)


def symmetrization_formula(lam: Sequence[int], r: int) -> LaurentPolynomial:
    """sum_{s in S_r} prod_i (1 - 1/a_{s(i)})^(lam_i+r-i) / prod_{i>j}(1 - a_{s(i)}/a_{s(j)}).

    Over the common denominator prod_{j<i}(a_j - a_i) every term becomes
    sgn(s) prod_i (1-1/a_{s(i)})^(...) prod_{i>j} a_{s(j)}; the quotient is
    then taken exactly.
    """
    lam = canonical_partition(lam)
    if r < len(lam):
        raise MalformedInputError(f"r = {r} is smaller than the length of {list(lam)}")
    lam = list(lam) + [0] * (r - len(lam))
    A = [LaurentPolynomial.gen(alpha(i)) for i in range(1, r + 1)]
    Ainv = [LaurentPolynomial.gen(alpha(i), -1) for i in range(1, r + 1)]
    num = LaurentPolynomial()
    for perm in itertools.permutations(range(r)):
        sign = _sign(perm)
        term = _ONE
        for i in range(r):
            term = term * (_ONE - Ainv[perm[i]]) ** (lam[i] + r - 1 - i)
            # prod over i > j of a_{s(j)}: a_{s(j)} appears r-1-j times
            term = term * A[perm[i]] ** (r - 1 - i)
        num = num + term * sign
    for j in range(1, r + 1):
        for i in range(j + 1, r + 1):
            num = divide_by_difference(num, alpha(j), A[i - 1])
    return num


def _sign(perm) -> int:
    s = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                s = -s
    return s
