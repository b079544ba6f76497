"""Formal residues at 0 and infinity, and their iterates.

Integrands are kept as a numerator times a product of powers of factors
(:class:`Integrand`).  A residue in ``v`` only expands the factors that
involve ``v``; the others ride along untouched, so denominators like
``1 - z1**2/a1`` never need to be factored or multiplied out.
"""
from __future__ import annotations

import contextvars
import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from .algebra.laurent import LaurentPolynomial
from .algebra.ratfunc import RationalFunction, normalize
from .algebra.series import coeff_of_product, factor_series, mul_trunc, poly_series
from .algebra.variables import Variable
from .errors import ConsistencyError, MalformedInputError

_ONE = LaurentPolynomial.constant(1)

# recompute order-insensitive iterated residues in a second order
debug_mode: contextvars.ContextVar[bool] = contextvars.ContextVar("kgroth_debug", default=False)


class Integrand:
    """num * prod(F**e); exponents may have either sign."""

    __slots__ = ("num", "factors")

    def __init__(self, num, factors: Iterable[tuple[LaurentPolynomial, int]] = ()):
        num = LaurentPolynomial.coerce(num)
        merged: dict[LaurentPolynomial, int] = {}
        for F, e in factors:
            F = LaurentPolynomial.coerce(F)
            if e == 0:
                continue
            if F.is_zero():
                raise MalformedInputError("zero factor in integrand")
            if F.is_monomial():
                num = num * F ** e
                continue
            merged[F] = merged.get(F, 0) + e
        self.num = num
        self.factors = tuple((F, e) for F, e in merged.items() if e)

    @classmethod
    def coerce(cls, f) -> "Integrand":
        if isinstance(f, Integrand):
            return f
        if isinstance(f, RationalFunction):
            return cls(f.num, [(F, -e) for F, e in f.factor_list()])
        return cls(LaurentPolynomial.coerce(f))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def involves(self, v: Variable) -> bool:
        return self.num.involves(v) or any(F.involves(v) for F, _ in self.factors)

    def variables(self) -> set[Variable]:
        out = set(self.num.variables())
        for F, _ in self.factors:
            out |= F.variables()
        return out

    def scale(self, c) -> "Integrand":
        return Integrand(self.num * c, self.factors)

    def shift(self, v: Variable, k: int) -> "Integrand":
        return Integrand(self.num.shift(v, k), self.factors)

    def invert(self, v: Variable) -> "Integrand":
        """Substitute v -> 1/v."""
        m = {v: v}
        return Integrand(self.num.invert_variables(m),
                         [(F.invert_variables(m) if F.involves(v) else F, e) for F, e in self.factors])

    def subs_monomial(self, bindings) -> "Integrand":
        return Integrand(self.num.subs_monomial(bindings), [(F.subs_monomial(bindings), e) for F, e in self.factors])

    def to_rational(self) -> RationalFunction:
        num = self.num
        dens = []
        for F, e in self.factors:
            if e > 0:
                num = num * F ** e
            else:
                dens.append((F, -e))
        return RationalFunction.from_factors(num, dens)

    def __mul__(self, other) -> "Integrand":
        other = Integrand.coerce(other)
        return Integrand(self.num * other.num, self.factors + other.factors)

    def __str__(self):
        parts = [f"({self.num})"] + [f"({F})^{e}" for F, e in self.factors]
        return "*".join(parts)


class Location(Enum):
    ZERO = "zero"
    INFINITY = "infinity"
    ZERO_AND_INFINITY = "zero_and_infinity"


@dataclass(frozen=True)
class ResidueSpec:
    variable: Variable
    location: Location = Location.ZERO_AND_INFINITY


@dataclass(frozen=True)
class ResidueForm:
    """integrand * prod(dv/v) over measure_vars (or plain dv when log_measure is False)."""

    integrand: object
    measure_vars: tuple
    log_measure: bool = True

    def __post_init__(self):
        mv = tuple(self.measure_vars)
        if len(set(mv)) != len(mv):
            raise MalformedInputError("duplicate measure variable")
        object.__setattr__(self, "measure_vars", mv)

    def full_integrand(self) -> Integrand:
        f = Integrand.coerce(self.integrand)
        if self.log_measure:
            for v in self.measure_vars:
                f = f.shift(v, -1)
        return f


# --- single residues -----------------------------------------------------


def _res0(f: Integrand, v: Variable) -> Integrand | None:
    if f.num.is_zero():
        return None
    live = [(F, e) for F, e in f.factors if F.involves(v)]
    carry = [(F, e) for F, e in f.factors if not F.involves(v)]
    nparts = f.num.by_degree(v)
    val = min(nparts)
    for F, e in live:
        val += min(F.by_degree(v)) * e
    n = -1 - val
    if n < 0:
        return None
    scale = _ONE
    dens: list = []
    acc = None
    # cheapest factors first; the numerator is folded in last, coefficient n only
    live.sort(key=lambda fe: (len(fe[0]), abs(fe[1])))
    for F, e in live:
        fx = factor_series(F, v, e, n)
        scale = scale * fx.scale
        dens.extend(fx.den)
        acc = fx.coeffs if acc is None else mul_trunc(acc, fx.coeffs, n)
    ps = poly_series(f.num, v, n).coeffs
    c = ps[n] if acc is None else coeff_of_product(acc, ps, n)
    if c.is_zero():
        return None
    return Integrand(c * scale, carry + [(L, -p) for L, p in dens])


def _resinf(f: Integrand, v: Variable) -> Integrand | None:
    g = f.invert(v)
    g = Integrand(-g.num.shift(v, -2), g.factors)
    return _res0(g, v)


def _apply(terms: list[Integrand], spec: ResidueSpec) -> list[Integrand]:
    out = []
    for f in terms:
        if spec.location in (Location.ZERO, Location.ZERO_AND_INFINITY):
            r = _res0(f, spec.variable)
            if r is not None:
                out.append(r)
        if spec.location in (Location.INFINITY, Location.ZERO_AND_INFINITY):
            r = _resinf(f, spec.variable)
            if r is not None:
                out.append(r)
    return out


def combine(terms: Sequence[Integrand]) -> RationalFunction:
    """Sum of integrands as a normalized rational function."""
    poly = LaurentPolynomial()
    rest = []
    for f in terms:
        if all(e > 0 for _, e in f.factors):
            p = f.num
            for F, e in f.factors:
                p = p * F ** e
            poly = poly + p
        else:
            rest.append(f)
    total = RationalFunction(poly)
    # group by denominator so equal denominators add cheaply
    groups: dict[tuple, LaurentPolynomial] = {}
    for f in rest:
        num = f.num
        den = []
        for F, e in f.factors:
            if e > 0:
                num = num * F ** e
            else:
                den.append((F, -e))
        key = tuple(sorted(den, key=lambda fe: (str(fe[0]), fe[1])))
        groups[key] = groups.get(key, LaurentPolynomial()) + num
    for key, num in groups.items():
        total = total + RationalFunction.from_factors(num, list(key))
    return normalize(total)


def _as_result(terms: list[Integrand]) -> RationalFunction:
    return combine(terms)


def residue_at_zero(f, v: Variable) -> RationalFunction:
    """Coefficient of v**-1 in the expansion of f at v = 0."""
    r = _res0(Integrand.coerce(f), v)
    return _as_result([r] if r is not None else [])


def residue_at_infinity(f, v: Variable) -> RationalFunction:
    """-Res_{w=0} f(1/w)/w**2."""
    r = _resinf(Integrand.coerce(f), v)
    return _as_result([r] if r is not None else [])


def residue_zero_infinity(f, v: Variable) -> RationalFunction:
    return _as_result(_apply([Integrand.coerce(f)], ResidueSpec(v)))


# --- iterated residues ---------------------------------------------------


def iterated_terms(f, specs: Sequence[ResidueSpec]) -> list[Integrand]:
    """Apply specs innermost-first and return the unsummed terms."""
    terms = [Integrand.coerce(f)]
    for spec in specs:
        terms = _apply(terms, spec)
    return terms


def _separated(f: Integrand, vars_: Sequence[Variable]) -> bool:
    vs = set(vars_)
    for F, e in f.factors:
        if e < 0 and len(F.variables() & vs) > 1:
            return False
    return True


def iterated_residue(form, specs: Sequence[ResidueSpec]) -> RationalFunction:
    """Iterated residue, specs innermost first.

    ``form`` is a ResidueForm or a bare integrand (then the measure is the
    plain one, prod dv).
    """
    if isinstance(form, ResidueForm):
        f = form.full_integrand()
    else:
        f = Integrand.coerce(form)
    vars_ = [s.variable for s in specs]
    if len(set(vars_)) != len(vars_):
        raise MalformedInputError("a variable appears twice in the residue order")
    result = combine(iterated_terms(f, specs))
    left = result.variables() & set(vars_)
    if left:
        raise ConsistencyError(f"residue variables {sorted(v.name for v in left)} survive the iterated residue")
    if debug_mode.get() and len(specs) > 1 and _separated(f, vars_):
        other = combine(iterated_terms(f, list(reversed(specs))))
        if other != result:
            raise ConsistencyError("iterated residue depends on the order for a separated integrand")
    return result


def all_orders_agree(f, specs: Sequence[ResidueSpec]) -> bool:
    """Compare every ordering of specs (test helper for small r)."""
    ref = None
    for perm in itertools.permutations(specs):
        val = combine(iterated_terms(f, perm))
        if ref is None:
            ref = val
        elif val != ref:
            return False
    return True
