"""Quotients of Laurent polynomials.

Arithmetic defers cancellation; :func:`normalize` is applied whenever a
value leaves a module.  The canonical denominator is a primitive integral
polynomial with no monomial factor and a positive leading coefficient
(largest term in canonical order).
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Mapping, Sequence

from ..errors import MalformedInputError, PoleAtSubstitutionError
from .laurent import (
    LaurentPolynomial,
    Scalar,
    SLOT_BITS,
    decode,
    divide_exact,
    monomial_key,
    slot_exponent,
)
from .variables import Variable, variable_for_slot

FactorList = tuple[tuple[LaurentPolynomial, int], ...]


def _merge_factors(*lists) -> FactorList | None:
    out: list[list] = []
    for fl in lists:
        if fl is None:
            return None
        for f, e in fl:
            for item in out:
                if item[0] == f:
                    item[1] += e
                    break
            else:
                out.append([f, e])
    return tuple((f, e) for f, e in out if e)


class RationalFunction:
    __slots__ = ("num", "den", "den_factors")

    def __init__(self, num, den=1, den_factors: Sequence[tuple[LaurentPolynomial, int]] | None = None):
        num = LaurentPolynomial.coerce(num)
        den = LaurentPolynomial.coerce(den)
        if den.is_zero():
            raise MalformedInputError("zero denominator")
        self.num = num
        self.den = den
        self.den_factors = tuple(den_factors) if den_factors is not None else None

    @classmethod
    def from_factors(cls, num, factors: Sequence[tuple[LaurentPolynomial, int]]) -> "RationalFunction":
        """num / prod(f**e); factors with e <= 0 are moved to the numerator."""
        num = LaurentPolynomial.coerce(num)
        den = LaurentPolynomial.constant(1)
        kept = []
        for f, e in factors:
            if e > 0:
                den = den * f ** e
                kept.append((f, e))
            elif e < 0:
                num = num * f ** (-e)
        return cls(num, den, kept)

    @classmethod
    def coerce(cls, other) -> "RationalFunction":
        if isinstance(other, RationalFunction):
            return other
        return cls(LaurentPolynomial.coerce(other))

    # inspection -------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_laurent(self) -> bool:
        return self.den.is_monomial()

    def to_laurent(self) -> LaurentPolynomial:
        if self.den.is_monomial():
            return self.num * self.den.inverse_monomial()
        g = normalize(self)
        if not g.den.is_monomial():
            raise ValueError(f"not a Laurent polynomial: {g}")
        return g.num * g.den.inverse_monomial()

    def variables(self) -> set[Variable]:
        return self.num.variables() | self.den.variables()

    def factor_list(self) -> FactorList:
        if self.den_factors is not None:
            return self.den_factors
        return ((self.den, 1),)

    # arithmetic -------------------------------------------------------

    def __neg__(self):
        return RationalFunction(-self.num, self.den, self.den_factors)

    def __add__(self, other):
        if isinstance(other, (int, Fraction, LaurentPolynomial)):
            other = RationalFunction(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den, self.den_factors)
        return RationalFunction(
            self.num * other.den + other.num * self.den,
            self.den * other.den,
            _merge_factors(self.den_factors, other.den_factors),
        )

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, LaurentPolynomial)):
            other = RationalFunction(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, LaurentPolynomial)):
            return RationalFunction(self.num * other, self.den, self.den_factors)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return RationalFunction(self.num * other.num, self.den * other.den,
                                _merge_factors(self.den_factors, other.den_factors))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, LaurentPolynomial)):
            other = RationalFunction(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        if other.num.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num,
                                _merge_factors(self.den_factors, ((other.num, 1),)))

    def __rtruediv__(self, other):
        return RationalFunction.coerce(other) / self

    def __pow__(self, n: int):
        if n >= 0:
            fl = None if self.den_factors is None else tuple((f, e * n) for f, e in self.den_factors)
            return RationalFunction(self.num ** n, self.den ** n, fl)
        return RationalFunction(1) / (self ** (-n))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, LaurentPolynomial)):
            other = RationalFunction(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        g = normalize(self)
        return hash((g.num, g.den))

    def __str__(self):
        if self.den == 1:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"RationalFunction({str(self)!r})"


# --- normalization -----------------------------------------------------


def _content(p: LaurentPolynomial) -> Fraction:
    nums = 0
    dens = 1
    for c in p.terms.values():
        c = Fraction(c)
        nums = gcd(nums, c.numerator)
        dens = dens * c.denominator // gcd(dens, c.denominator)
    return Fraction(nums, dens)


def _min_shift(p: LaurentPolynomial) -> LaurentPolynomial:
    """The monomial m (coefficient 1) with p/m having min exponent 0 in every variable."""
    mins: dict[int, int] = {}
    first = True
    for mono in p.terms:
        d = dict(decode(mono))
        if first:
            mins = d
            first = False
            continue
        for s in list(mins):
            e = d.get(s, 0)
            if e < mins[s]:
                mins[s] = e
        for s, e in d.items():
            if s not in mins and e < 0:
                mins[s] = e
            elif s not in mins:
                pass
        # variables absent from this monomial have exponent 0 there
        for s in list(mins):
            if s not in d and mins[s] > 0:
                mins[s] = 0
    m = sum(e << (SLOT_BITS * s) for s, e in mins.items())
    return LaurentPolynomial({m: 1}, _trusted=True)


def _sympy_gcd(f: LaurentPolynomial, g: LaurentPolynomial) -> LaurentPolynomial:
    from sympy import Poly, QQ, symbols

    slots = sorted({s for p in (f, g) for m in p.terms for s, _ in decode(m)})
    if not slots:
        return LaurentPolynomial.constant(1)
    gens = symbols(f"v0:{len(slots)}")
    fs = f * _min_shift(f).inverse_monomial()
    gs = g * _min_shift(g).inverse_monomial()

    def to_poly(p):
        d = {}
        for m, c in p.terms.items():
            d[tuple(slot_exponent(m, s) for s in slots)] = QQ(Fraction(c).numerator, Fraction(c).denominator)
        return Poly.from_dict(d, *gens, domain=QQ)

    h = to_poly(fs).gcd(to_poly(gs))
    out = {}
    for exps, c in h.as_dict().items():
        m = sum(e << (SLOT_BITS * s) for s, e in zip(slots, exps))
        out[m] = Fraction(int(c.numerator), int(c.denominator))
    return LaurentPolynomial(out)


def _canonical_den(num: LaurentPolynomial, den: LaurentPolynomial) -> tuple[LaurentPolynomial, LaurentPolynomial]:
    shift = _min_shift(den)
    inv = shift.inverse_monomial()
    num, den = num * inv, den * inv
    c = _content(den)
    lead = max(den.terms, key=monomial_key)
    if den.terms[lead] < 0:
        c = -c
    num, den = num * (1 / c), den * (1 / c)
    return num, den


def normalize(f: RationalFunction) -> RationalFunction:
    """Cancel common factors and put the denominator in canonical form."""
    if not isinstance(f, RationalFunction):
        f = RationalFunction.coerce(f)
    if f.den.is_zero():
        raise MalformedInputError("zero denominator")
    if f.num.is_zero():
        return RationalFunction(0, 1, ())
    num, den = f.num, f.den
    factors = list(f.den_factors) if f.den_factors is not None else None
    if den.is_monomial():
        return RationalFunction(num * den.inverse_monomial(), 1, ())
    # cheap pass: cancel known denominator factors that divide the numerator
    if factors:
        kept = []
        for fac, e in factors:
            while e > 0 and not fac.is_monomial():
                q = divide_exact(num, fac)
                if q is None:
                    break
                num = q
                den = divide_exact(den, fac)
                e -= 1
            if e > 0 and not fac.is_monomial():
                kept.append((fac, e))
        factors = kept
        if den.is_monomial():
            return RationalFunction(num * den.inverse_monomial(), 1, ())
    g = _sympy_gcd(num, den)
    if not g.is_constant():
        num = divide_exact(num, g)
        den = divide_exact(den, g)
        factors = None
    if den.is_monomial():
        return RationalFunction(num * den.inverse_monomial(), 1, ())
    num, den = _canonical_den(num, den)
    if factors is not None:
        # keep factor bookkeeping only when it still multiplies out to den
        prod = LaurentPolynomial.constant(1)
        for fac, e in factors:
            prod = prod * fac ** e
        q = divide_exact(den, prod) if not prod.is_zero() else None
        if q is None or not q.is_monomial():
            factors = None
        else:
            factors = factors + [(q, 1)] if q != 1 else factors
    return RationalFunction(num, den, factors)


def equal(f, g) -> bool:
    f = RationalFunction.coerce(f)
    g = RationalFunction.coerce(g)
    return f.num * g.den == g.num * f.den


# --- substitution ------------------------------------------------------


def _subs_poly(p: LaurentPolynomial, bindings: Mapping[Variable, RationalFunction]) -> RationalFunction:
    lp = {}
    rf = {}
    for v, val in bindings.items():
        if isinstance(val, RationalFunction):
            if val.den.is_monomial():
                lp[v] = val.num * val.den.inverse_monomial()
            else:
                rf[v] = val
        else:
            lp[v] = val
    # laurent-valued bindings with negative powers need the rational route
    neg_poly = {v for v, val in lp.items()
                if isinstance(val, LaurentPolynomial) and not val.is_monomial() and not val.is_zero()
                and p.degree_range(v)[0] < 0}
    for v in neg_poly:
        rf[v] = RationalFunction(lp.pop(v))
    if not rf:
        return RationalFunction(p.subs(lp))
    # split by the exponents of rational-valued variables
    slots = [(v.slot, v) for v in rf]
    groups: dict[tuple, dict] = {}
    for m, c in p.terms.items():
        exps = []
        for s, _ in slots:
            e = slot_exponent(m, s)
            exps.append(e)
            m -= e << (SLOT_BITS * s)
        groups.setdefault(tuple(exps), {})[m] = c
    acc = RationalFunction(0)
    for exps, rest in groups.items():
        term = RationalFunction(LaurentPolynomial(rest).subs(lp))
        for (_, v), e in zip(slots, exps):
            if e:
                val = rf[v]
                if e < 0 and val.num.is_zero():
                    raise PoleAtSubstitutionError(f"{v} -> 0 in a negative power")
                term = term * val ** e
        acc = acc + term
    return acc


def substitute(f, bindings: Mapping[Variable, object]) -> RationalFunction:
    """Simultaneous substitution; the result is normalized.

    Raises PoleAtSubstitutionError when a denominator factor vanishes.
    """
    f = RationalFunction.coerce(f)
    clean = {}
    for v, val in bindings.items():
        if isinstance(val, RationalFunction):
            clean[v] = val
        elif isinstance(val, LaurentPolynomial):
            clean[v] = val
        else:
            clean[v] = LaurentPolynomial.constant(val)
    try:
        num = _subs_poly(f.num, clean)
        dens = [(_subs_poly(fac, clean), e) for fac, e in f.factor_list()]
    except PoleAtSubstitutionError:
        raise
    for d, _ in dens:
        if d.num.is_zero():
            raise PoleAtSubstitutionError("substitution makes a denominator factor vanish")
    out = num
    for d, e in dens:
        out = out / (d ** e)
    return normalize(out)
