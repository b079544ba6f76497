"""Push-forward along a Grassmannian: fixed-point sum versus iterated residue."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from ..algebra.laurent import LaurentPolynomial
from ..algebra.ratfunc import RationalFunction, normalize
from ..algebra.variables import omega, sigma, z
from ..errors import MalformedInputError
from ..residue import Integrand, ResidueSpec, combine, iterated_terms

_ONE = LaurentPolynomial.constant(1)
LOCALIZATION_BOUND = 4


@dataclass(frozen=True)
class LocalizationReport:
    holds: bool
    fixed_point_sum: RationalFunction
    residue: RationalFunction


def monomial_symmetric(mu, r: int) -> LaurentPolynomial:
    """m_mu(sigma_1..sigma_r): the sum of the distinct permutations of sigma^mu."""
    mu = tuple(mu) + (0,) * (r - len(mu))
    if len(mu) > r:
        raise MalformedInputError(f"{list(mu)} has more than {r} parts")
    acc = LaurentPolynomial()
    for exps in set(itertools.permutations(mu)):
        acc = acc + LaurentPolynomial.monomial({sigma(i + 1): e for i, e in enumerate(exps)})
    return acc


def fixed_point_sum(r: int, w: int, g: LaurentPolynomial) -> RationalFunction:
    """sum over r-subsets I of g(omega_I) / prod_{i in I, j not in I}(1 - omega_i/omega_j)."""
    total = RationalFunction(LaurentPolynomial())
    for I in itertools.combinations(range(1, w + 1), r):
        rest = [j for j in range(1, w + 1) if j not in I]
        val = g.subs_monomial({sigma(k + 1): (1, {omega(i): 1}) for k, i in enumerate(I)})
        dens = [(_ONE - LaurentPolynomial.gen(omega(i)) * LaurentPolynomial.gen(omega(j), -1), 1)
                for i in I for j in rest]
        total = total + RationalFunction.from_factors(val, dens)
    return normalize(total)


def pushforward_residue(r: int, w: int, g: LaurentPolynomial) -> RationalFunction:
    """Res_{z=0,inf} prod_{i>j}(1 - z_i/z_j) g(z) / prod_i prod_j (1 - z_i/omega_j) prod dz_i/z_i."""
    num = g.subs_monomial({sigma(k): (1, {z(k): 1}) for k in range(1, r + 1)})
    factors = []
    for i in range(1, r + 1):
        num = num * LaurentPolynomial.gen(z(i), -1)
        for j in range(1, w + 1):
            factors.append((_ONE - LaurentPolynomial.gen(z(i)) * LaurentPolynomial.gen(omega(j), -1), -1))
        for j in range(1, i):
            factors.append((_ONE - LaurentPolynomial.gen(z(i)) * LaurentPolynomial.gen(z(j), -1), 1))
    specs = [ResidueSpec(z(i)) for i in range(r, 0, -1)]
    return combine(iterated_terms(Integrand(num, factors), specs))


def localization_vs_residue(r: int, w: int, g) -> LocalizationReport:
    if not (1 <= r <= w <= LOCALIZATION_BOUND):
        raise MalformedInputError(f"need 1 <= r <= w <= {LOCALIZATION_BOUND}")
    g = LaurentPolynomial.coerce(g)
    stray = {v for v in g.variables() if v.family != "sigma" or v.index > r}
    if stray:
        raise MalformedInputError(f"g may only involve sigma_1..sigma_{r}")
    lhs = fixed_point_sum(r, w, g)
    rhs = pushforward_residue(r, w, g)
    return LocalizationReport(lhs == rhs, lhs, rhs)
