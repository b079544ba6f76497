"""Truncated Laurent series in one variable.

The workhorse is :func:`factor_series`, which expands a single factor
``F**e`` around ``v = 0``.  Writing ``F = v**m * (L + H)`` with ``L`` free
of ``v`` and ``H`` divisible by ``v``:

* if ``L`` is a single term it is a unit of the Laurent ring, and the
  expansion ``L**e * (1 + H/L)**e`` has Laurent-polynomial coefficients;
* otherwise the expansion is returned over the common denominator
  ``L**(|e|*(N+1))`` so that every coefficient stays polynomial.

Binomial factors (``H`` a single term) use the closed form for
``(1 + c v**k)**e``; everything else goes through the J.C.P. Miller power
recurrence.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Sequence

from ..errors import MalformedInputError
from .laurent import LaurentPolynomial
from .ratfunc import RationalFunction, normalize
from .variables import Variable

_ONE = LaurentPolynomial.constant(1)
_ZERO = LaurentPolynomial()


def binomial(e: int, n: int) -> int:
    """Generalized binomial coefficient e choose n for any integer e, n >= 0."""
    if n < 0:
        return 0
    num = 1
    for i in range(n):
        num *= e - i
    return num // factorial(n)


def mul_trunc(a: Sequence[LaurentPolynomial], b: Sequence[LaurentPolynomial], n: int) -> list[LaurentPolynomial]:
    """Product of two coefficient lists, keeping degrees 0..n."""
    out = [_ZERO] * (n + 1)
    for i, ai in enumerate(a[: n + 1]):
        if ai.is_zero():
            continue
        for j in range(0, min(len(b), n + 1 - i)):
            bj = b[j]
            if not bj.is_zero():
                out[i + j] = out[i + j] + ai * bj
    return out


def coeff_of_product(a: Sequence[LaurentPolynomial], b: Sequence[LaurentPolynomial], n: int) -> LaurentPolynomial:
    """Degree-n coefficient of a*b only."""
    acc = _ZERO
    for i in range(max(0, n - len(b) + 1), min(len(a), n + 1)):
        ai = a[i]
        bj = b[n - i]
        if not ai.is_zero() and not bj.is_zero():
            acc = acc + ai * bj
    return acc


def _power_series(u: Sequence[LaurentPolynomial], e: int, n: int) -> list[LaurentPolynomial]:
    """(1 + u)**e through degree n, where u[0] == 0."""
    nz = [(k, c) for k, c in enumerate(u[: n + 1]) if k and not c.is_zero()]
    out = [_ZERO] * (n + 1)
    out[0] = _ONE
    if not nz or e == 0:
        return out
    if len(nz) == 1:
        k, c = nz[0]
        p = _ONE
        for j in range(1, n // k + 1):
            if e >= 0 and j > e:
                break
            p = p * c
            out[j * k] = p * binomial(e, j)
        return out
    # Miller: b_j = 1/j * sum_{i=1..j} ((e+1) i - j) u_i b_{j-i}
    for j in range(1, n + 1):
        acc = _ZERO
        for i, ui in nz:
            if i > j:
                break
            w = (e + 1) * i - j
            if w and not out[j - i].is_zero():
                acc = acc + ui * out[j - i] * w
        out[j] = acc * Fraction(1, j) if not acc.is_zero() else _ZERO
    return out


@dataclass(frozen=True)
class FactorExpansion:
    """F**e = v**shift * scale * sum(coeffs[j] v**j) / prod(den) + O(v**(shift+N+1))."""

    shift: int
    scale: LaurentPolynomial
    coeffs: list
    den: tuple


def factor_series(F: LaurentPolynomial, v: Variable, e: int, n: int) -> FactorExpansion:
    if F.is_zero():
        raise MalformedInputError("cannot expand a power of zero")
    parts = F.by_degree(v)
    m = min(parts)
    L = parts[m]
    H = [parts.get(m + j, _ZERO) for j in range(0, n + 1)]
    H[0] = _ZERO
    if L.is_monomial():
        Linv = L.inverse_monomial()
        u = [h * Linv if not h.is_zero() else _ZERO for h in H]
        return FactorExpansion(m * e, L ** e, _power_series(u, e, n), ())
    if e >= 0:
        # plain polynomial power, no division needed
        base = [L] + H[1:]
        out = [_ONE] + [_ZERO] * n
        for _ in range(e):
            out = mul_trunc(out, base, n)
        return FactorExpansion(m * e, _ONE, out, ())
    # s'_j = L**(j+1) t_j for t = 1/(L+H): s'_0 = 1, s'_j = -sum_i H_i L**(i-1) s'_{j-i}
    Lp = [_ONE]
    for _ in range(n):
        Lp.append(Lp[-1] * L)
    sp = [_ONE]
    for j in range(1, n + 1):
        acc = _ZERO
        for i in range(1, j + 1):
            if not H[i].is_zero():
                acc = acc - H[i] * Lp[i - 1] * sp[j - i]
        sp.append(acc)
    inv = [sp[j] * Lp[n - j] for j in range(n + 1)]  # over L**(n+1)
    out = inv
    for _ in range(-e - 1):
        out = mul_trunc(out, inv, n)
    return FactorExpansion(m * e, _ONE, out, ((L, -e * (n + 1)),))


def poly_series(P: LaurentPolynomial, v: Variable, n: int) -> FactorExpansion:
    if P.is_zero():
        return FactorExpansion(0, _ONE, [_ZERO] * (n + 1), ())
    parts = P.by_degree(v)
    m = min(parts)
    return FactorExpansion(m, _ONE, [parts.get(m + j, _ZERO) for j in range(n + 1)], ())


# --- public series type -------------------------------------------------


@dataclass(frozen=True)
class TruncatedSeries:
    """sum_i coefficients[i] * variable**(valuation + i) + O(variable**precision).

    Exponents below ``valuation`` have zero coefficient; exponents at or
    beyond ``precision`` are unknown.
    """

    variable: Variable
    valuation: int
    coefficients: tuple

    @property
    def order_bound(self) -> int:
        return len(self.coefficients) - 1

    @property
    def precision(self) -> int:
        return self.valuation + len(self.coefficients)

    def coefficient(self, exponent: int):
        if exponent < self.valuation:
            return _ZERO
        if exponent >= self.precision:
            raise ValueError(f"coefficient of {self.variable}^{exponent} is beyond the truncation order")
        return self.coefficients[exponent - self.valuation]

    def truncate(self, order: int) -> "TruncatedSeries":
        keep = max(0, min(len(self.coefficients), order - self.valuation + 1))
        return TruncatedSeries(self.variable, self.valuation, self.coefficients[:keep])

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        val = min(self.valuation, other.valuation)
        prec = min(self.precision, other.precision)
        cs = tuple(self.coefficient(e) + other.coefficient(e) for e in range(val, prec))
        return TruncatedSeries(self.variable, val, cs)

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return TruncatedSeries(self.variable, self.valuation, tuple(c * other for c in self.coefficients))
        self._check(other)
        val = self.valuation + other.valuation
        prec = min(self.precision + other.valuation, other.precision + self.valuation)
        n = prec - val - 1
        if n < 0:
            return TruncatedSeries(self.variable, prec, ())
        out = []
        for j in range(n + 1):
            acc = _ZERO
            for i in range(j + 1):
                if i < len(self.coefficients) and j - i < len(other.coefficients):
                    acc = acc + self.coefficients[i] * other.coefficients[j - i]
            out.append(acc)
        return TruncatedSeries(self.variable, val, tuple(out))

    __rmul__ = __mul__

    def _check(self, other):
        if self.variable != other.variable:
            raise MalformedInputError("series in different variables")

    def to_polynomial(self):
        """The known part as a Laurent polynomial (or rational function) in the variable."""
        acc = _ZERO
        for i, c in enumerate(self.coefficients):
            term = LaurentPolynomial.gen(self.variable, self.valuation + i)
            acc = acc + c * term if isinstance(c, RationalFunction) else acc + term * c
        return acc

    def __str__(self):
        parts = []
        for i, c in enumerate(self.coefficients):
            if isinstance(c, LaurentPolynomial) and c.is_zero():
                continue
            parts.append(f"({c})*{self.variable.name}^{self.valuation + i}")
        parts.append(f"O({self.variable.name}^{self.precision})")
        return " + ".join(parts)


def series_expand(f, v: Variable, order: int) -> TruncatedSeries:
    """Laurent expansion of f at v = 0 through v**order."""
    f = RationalFunction.coerce(f)
    if f.num.is_zero():
        return TruncatedSeries(v, order + 1, ())
    num_parts = f.num.by_degree(v)
    num_min = min(num_parts)
    facs = [(F, -e) for F, e in f.factor_list() if not F.is_constant()]
    const_den = _ONE
    for F, e in f.factor_list():
        if F.is_constant():
            const_den = const_den * F ** e
    shifts = 0
    for F, e in facs:
        shifts += min(F.by_degree(v)) * e
    val = num_min + shifts
    n = order - val
    if n < 0:
        return TruncatedSeries(v, order + 1, ())
    acc = poly_series(f.num, v, n).coeffs
    scale = _ONE
    dens: list = []
    for F, e in facs:
        fx = factor_series(F, v, e, n)
        acc = mul_trunc(acc, fx.coeffs, n)
        scale = scale * fx.scale
        dens.extend(fx.den)
    cinv = Fraction(1) / const_den.constant_term()
    if dens:
        coeffs = tuple(normalize(RationalFunction.from_factors(c * scale * cinv, dens)) for c in acc)
        coeffs = tuple(c.to_laurent() if c.is_laurent() else c for c in coeffs)
    else:
        coeffs = tuple(c * scale * cinv for c in acc)
    return TruncatedSeries(v, val, coeffs)


def series_exp(a: TruncatedSeries) -> TruncatedSeries:
    """exp(a) for a series with zero constant term."""
    if a.valuation < 0 and any(not _is_zero(c) for c in a.coefficients[: -a.valuation]):
        raise MalformedInputError("exp needs a series with nonnegative valuation")
    if a.precision <= 0:
        raise MalformedInputError("exp needs the constant term to be known")
    if not _is_zero(a.coefficient(0)):
        raise MalformedInputError("exp needs a series with zero constant term")
    n = a.precision - 1
    u = [a.coefficient(e) if e >= a.valuation else _ZERO for e in range(n + 1)]
    # b' = a' b  =>  j b_j = sum_i i a_i b_{j-i}
    b = [_ONE]
    for j in range(1, n + 1):
        acc = _ZERO
        for i in range(1, j + 1):
            if not _is_zero(u[i]):
                acc = acc + u[i] * b[j - i] * i
        b.append(acc * Fraction(1, j))
    return TruncatedSeries(a.variable, 0, tuple(b))


def _is_zero(c) -> bool:
    if isinstance(c, (LaurentPolynomial, RationalFunction)):
        return c.is_zero()
    return c == 0
