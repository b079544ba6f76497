"""K-theoretic Thom polynomial of A2: residue form and G expansions."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb

from ..algebra.laurent import LaurentPolynomial
from ..algebra.ratfunc import RationalFunction, normalize
from ..algebra.variables import x, z
from ..errors import MalformedInputError
from ..grothendieck.expansion import GExpansion
from ..residue import Integrand
from .common import CoeffTable, ThomInstance, evaluate_residue, inverted_g, m_factors

_ONE = LaurentPolynomial.constant(1)
REMAINDER_BOUND = 6


def a2_integrand(inst: ThomInstance) -> Integrand:
    """(1 - z2/z1)/(1 - z2/z1^2) prod_i M(z_i) dz2 dz1/(z2 z1)."""
    Z1, Z2 = LaurentPolynomial.gen(z(1)), LaurentPolynomial.gen(z(2))
    factors = [(_ONE - Z2 * LaurentPolynomial.gen(z(1), -1), 1),
               (_ONE - Z2 * LaurentPolynomial.gen(z(1), -2), -1)]
    factors += m_factors(z(1), inst) + m_factors(z(2), inst)
    return Integrand((Z1 * Z2).inverse_monomial(), factors)


@lru_cache(maxsize=None)
def _ktp_a2(inst: ThomInstance, swap: bool) -> LaurentPolynomial:
    order = [z(1), z(2)] if swap else [z(2), z(1)]
    return evaluate_residue(a2_integrand(inst), order, "KTp_A2")


def ktp_a2(inst: ThomInstance, swap_order: bool = False) -> LaurentPolynomial:
    """The double residue, z2 innermost; ``swap_order`` takes z1 first instead."""
    return _ktp_a2(inst, bool(swap_order))


# --- the d_{r,s} coefficients ------------------------------------------------


def _binom(n: int, k: int) -> int:
    if n < 0 or k < 0 or k > n:
        return 0
    return comb(n, k)


def d_coeff(r: int, s: int) -> int:
    """Closed form for the coefficient of (1-z1)^r (1-z2)^s in 1/(1 - z2/z1^2)."""
    if r < 0 or s >= 0:
        return 0
    n = -s - 1
    val = (Fraction(2) ** (-2 * s - 2 - r) * _binom(n, -2 * s - r - 2)
           + Fraction(2) ** (-2 * s - r) * _binom(n, -2 * s - r - 1)
           + Fraction(2) ** (-2 * s - r) * _binom(n, -2 * s - r))
    val *= (-1) ** ((r + s + 1) % 2)
    assert val.denominator == 1
    return int(val)


def d_oracle(r_max: int) -> CoeffTable:
    """All d_{r,s} with r <= r_max, from sum_k x2^-k (2x1 - x1^2)^(k-1) (1 - 2x1 + x1^2)."""
    if r_max < 0:
        raise MalformedInputError("r_max must be nonnegative")
    X1, X2 = LaurentPolynomial.gen(x(1)), LaurentPolynomial.gen(x(2))
    u = X1 * 2 - X1 * X1
    pref = _ONE - X1 * 2 + X1 * X1
    acc = LaurentPolynomial()
    power = _ONE
    for k in range(1, r_max + 2):
        acc = acc + LaurentPolynomial.gen(x(2), -k) * power * pref
        power = _truncate(power * u, r_max)
    entries = {}
    for mono, c in acc.items():
        r, s = mono.get(x(1), 0), mono.get(x(2), 0)
        if r <= r_max:
            entries[(r, s)] = c
    return CoeffTable(entries, ("r", "s"))


def _truncate(p: LaurentPolynomial, top: int) -> LaurentPolynomial:
    return LaurentPolynomial({m: c for m, c in p.terms.items() if _deg(m, p) <= top})


def _deg(mono, p):
    from ..algebra.laurent import slot_exponent

    return slot_exponent(mono, x(1).slot)


def d_table(r_max: int) -> CoeffTable:
    """The closed-form d_{r,s} for r <= r_max."""
    entries = {(r, s): d_coeff(r, s) for r in range(r_max + 1) for s in range(-r - 1, 0)}
    return CoeffTable(entries, ("r", "s"))


def _s_top(r: int) -> int:
    # d_{r,s} vanishes for s > -ceil(r/2)
    return -((r + 1) // 2)


def D_coeff(r: int, s: int, l: int) -> int:
    """Coefficients of the minimal expansion: entries below row -l-2 swept up into it."""
    if l < 0:
        raise MalformedInputError("l must be nonnegative")
    if not (0 <= r <= 2 * l + 2 and -l - 2 <= s <= _s_top(r)):
        raise MalformedInputError(f"(r, s) = ({r}, {s}) is outside the range for l = {l}")
    if s > -l - 2:
        return d_coeff(r, s)
    return sum(d_coeff(r, t) for t in range(-r - 1, -l - 1))


def D_table(l: int) -> CoeffTable:
    entries = {(r, s, l): D_coeff(r, s, l)
               for r in range(2 * l + 3) for s in range(-l - 2, _s_top(r) + 1)}
    return CoeffTable(entries, ("r", "s", "l"))


# --- expansions --------------------------------------------------------------


def ktp_a2_stable(l: int, N: int) -> GExpansion:
    """sum_{r<=N} sum_s d_{r,s} G_{r+l+1, s+l+2}; keys may be non-partitions."""
    if l < 0:
        raise MalformedInputError("l must be nonnegative")
    if N <= 2 * l + 2:
        raise MalformedInputError(f"N must exceed 2l+2 = {2 * l + 2}")
    terms = []
    for r in range(N + 1):
        for s in range(-r - 1, _s_top(r) + 1):
            c = d_coeff(r, s)
            if c:
                terms.append(((r + l + 1, s + l + 2), c))
    return GExpansion(terms)


def ktp_a2_minimal(l: int) -> GExpansion:
    """The finite partition-indexed expansion with coefficients D_{r,s,l}."""
    if l < 0:
        raise MalformedInputError("l must be nonnegative")
    terms = []
    for r in range(2 * l + 3):
        for s in range(-l - 2, _s_top(r) + 1):
            c = D_coeff(r, s, l)
            if c:
                terms.append(((r + l + 1, s + l + 2), c))
    return GExpansion(terms)


def evaluate_expansion(e: GExpansion, inst: ThomInstance) -> LaurentPolynomial:
    """sum c_I g_I(eps^-1; beta^-1) at the given dimensions."""
    return e.evaluate(lambda key: inverted_g(key, inst))


# --- reports -----------------------------------------------------------------


@dataclass(frozen=True)
class SignReport:
    passed: bool
    violations: list = field(default_factory=list)


def sign_report(e: GExpansion) -> SignReport:
    """Check that the coefficient of G_{a,b} has sign (-1)^(a+b)."""
    bad = []
    for key, c in e.items():
        if len(key) > 2:
            raise MalformedInputError(f"sign law concerns pairs, got G_{list(key)}")
        a = key[0] if key else 0
        b = key[1] if len(key) > 1 else 0
        if (c > 0) != ((a + b) % 2 == 0):
            bad.append((key, c))
    return SignReport(not bad, bad)


@dataclass(frozen=True)
class RemainderReport:
    N: int
    holds: bool
    defect: RationalFunction


def _pq(N: int, v: LaurentPolynomial) -> tuple[LaurentPolynomial, LaurentPolynomial]:
    p = LaurentPolynomial()
    q = LaurentPolynomial()
    for i in range((N + 1) // 2 + 1):
        p = p + v ** i * comb(N + 1, 2 * i)
    for i in range(N // 2 + 1):
        q = q + v ** i * comb(N + 1, 2 * i + 1)
    return p, q


def remainder_identity_check(N: int, bound: int = REMAINDER_BOUND) -> RemainderReport:
    """1/(1 - z2/z1^2) = sum_{r<=N} (sum_s d_{r,s} (1-z2)^s)(1-z1)^r + R_N, exactly."""
    if N < 0 or N > bound:
        raise MalformedInputError(f"N must be in [0, {bound}]")
    Z1, Z2 = LaurentPolynomial.gen(z(1)), LaurentPolynomial.gen(z(2))
    u1, u2 = _ONE - Z1, _ONE - Z2
    lhs = RationalFunction(Z1 * Z1, Z1 * Z1 - Z2)
    # common denominator (1 - z2)^(N+1) for the truncated sum
    num = LaurentPolynomial()
    for r in range(N + 1):
        for s in range(-r - 1, 0):
            c = d_coeff(r, s)
            if c:
                num = num + u1 ** r * u2 ** (s + N + 1) * c
    partial = RationalFunction.from_factors(num, [(u2, N + 1)])
    p, q = _pq(N, Z2)
    rem = RationalFunction.from_factors(-(u1 ** (N + 1)) * Z2 * (Z1 * q + p), [(u2, N + 1), (Z2 - Z1 * Z1, 1)])
    defect = normalize(lhs - partial - rem)
    return RemainderReport(N, defect.is_zero(), defect)
