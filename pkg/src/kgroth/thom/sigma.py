"""The Sigma^r locus: K-theoretic Giambelli-Thom-Porteous via residues."""
from __future__ import annotations

from functools import lru_cache

from ..algebra.laurent import LaurentPolynomial
from ..algebra.variables import z
from ..errors import MalformedInputError
from ..residue import Integrand
from .common import ThomInstance, evaluate_residue, inverted_g, m_factors

_ONE = LaurentPolynomial.constant(1)


def sigma_integrand(r: int, inst: ThomInstance) -> Integrand:
    """prod_{i>j}(1 - z_i/z_j) prod_i M(z_i) prod dz_i/z_i."""
    factors = []
    num = _ONE
    for i in range(1, r + 1):
        num = num * LaurentPolynomial.gen(z(i), -1)
        factors += m_factors(z(i), inst)
        for j in range(1, i):
            factors.append((_ONE - LaurentPolynomial.gen(z(i)) * LaurentPolynomial.gen(z(j), -1), 1))
    return Integrand(num, factors)


@lru_cache(maxsize=None)
def _ktp_sigma(r: int, inst: ThomInstance) -> LaurentPolynomial:
    order = [z(i) for i in range(r, 0, -1)]
    return evaluate_residue(sigma_integrand(r, inst), order, "KTp_Sigma")


def ktp_sigma_r(r: int, inst: ThomInstance) -> LaurentPolynomial:
    """KTp of Sigma^r in eps (domain) and beta (target) roots."""
    if r < 1 or r > inst.a:
        raise MalformedInputError(f"need 1 <= r <= a = {inst.a}, got r = {r}")
    return _ktp_sigma(r, inst)


def porteous_g(r: int, inst: ThomInstance) -> LaurentPolynomial:
    """G_{(r+l)^r}(eps^-1; beta^-1), the predicted value."""
    return inverted_g((r + inst.l,) * r, inst)
