"""Sparse multivariate Laurent polynomials with exact rational coefficients.

A monomial is packed into a single Python integer: the exponent of the
variable in slot ``s`` is the balanced base-2**16 digit at position ``s``.
Multiplying monomials is then integer addition, which keeps the inner
loops of residue extraction and divided differences cheap.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Iterator, Mapping, Union

from ..errors import PoleAtSubstitutionError
from .variables import SLOT_BITS, Variable, variable_for_slot

_BASE = 1 << SLOT_BITS
_HALF = 1 << (SLOT_BITS - 1)
_MASK = _BASE - 1

Scalar = Union[int, Fraction]

_half_upto: list[int] = []


def _half_prefix(slot: int) -> int:
    while len(_half_upto) <= slot:
        j = len(_half_upto)
        prev = _half_upto[-1] if _half_upto else 0
        _half_upto.append(prev + (_HALF << (SLOT_BITS * j)))
    return _half_upto[slot]


def slot_exponent(mono: int, slot: int) -> int:
    return (((mono + _half_prefix(slot)) >> (SLOT_BITS * slot)) & _MASK) - _HALF


def slot_unit(slot: int) -> int:
    return 1 << (SLOT_BITS * slot)


def decode(mono: int) -> list[tuple[int, int]]:
    out = []
    slot = 0
    while mono:
        d = ((mono + _HALF) & _MASK) - _HALF
        if d:
            out.append((slot, d))
        mono = (mono - d) >> SLOT_BITS
        slot += 1
    return out


def pack(exponents: Mapping[Variable, int]) -> int:
    m = 0
    for v, e in exponents.items():
        if e:
            m += e << (SLOT_BITS * v.slot)
    return m


def _scalar(c) -> Scalar:
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, Rational):
        return _scalar(Fraction(c.numerator, c.denominator))
    raise TypeError(f"not an exact rational scalar: {c!r}")


def _fmt_scalar(c) -> str:
    if isinstance(c, Fraction) and c.denominator == 1:
        return str(c.numerator)
    return str(c)


def monomial_items(mono: int) -> list[tuple[Variable, int]]:
    return sorted((variable_for_slot(s), e) for s, e in decode(mono))


def monomial_key(mono: int):
    items = monomial_items(mono)
    return (sum(abs(e) for _, e in items),
            tuple((v.rank, v.index, e) for v, e in items))


def render_monomial(mono: int) -> str:
    items = monomial_items(mono)
    pos = [f"{v.name}" if e == 1 else f"{v.name}^{e}" for v, e in items if e > 0]
    neg = [f"{v.name}^{e}" for v, e in items if e < 0]
    return "*".join(pos + neg)


class LaurentPolynomial:
    """Immutable finite sum of coefficient * monomial.

    ``terms`` maps packed monomials to nonzero int/Fraction coefficients.
    """

    __slots__ = ("_t", "_hash")

    def __init__(self, terms: Mapping[int, Scalar] | None = None, *, _trusted: bool = False):
        if terms is None:
            self._t = {}
        elif _trusted:
            self._t = terms
        else:
            self._t = {m: _scalar(c) for m, c in terms.items() if c}
        self._hash = None

    # construction -----------------------------------------------------

    @classmethod
    def constant(cls, c) -> "LaurentPolynomial":
        c = _scalar(c)
        return cls({0: c}, _trusted=True) if c else cls()

    @classmethod
    def gen(cls, v: Variable, power: int = 1, coeff=1) -> "LaurentPolynomial":
        coeff = _scalar(coeff)
        if not coeff:
            return cls()
        return cls({power << (SLOT_BITS * v.slot): coeff}, _trusted=True)

    @classmethod
    def monomial(cls, exponents: Mapping[Variable, int], coeff=1) -> "LaurentPolynomial":
        coeff = _scalar(coeff)
        if not coeff:
            return cls()
        return cls({pack(exponents): coeff}, _trusted=True)

    @classmethod
    def coerce(cls, other) -> "LaurentPolynomial":
        if isinstance(other, LaurentPolynomial):
            return other
        return cls.constant(other)

    # inspection -------------------------------------------------------

    @property
    def terms(self) -> Mapping[int, Scalar]:
        return self._t

    def items(self) -> Iterator[tuple[dict[Variable, int], Scalar]]:
        for m in sorted(self._t, key=monomial_key):
            yield dict(monomial_items(m)), self._t[m]

    def __len__(self) -> int:
        return len(self._t)

    def __bool__(self) -> bool:
        return bool(self._t)

    def is_zero(self) -> bool:
        return not self._t

    def is_constant(self) -> bool:
        return not self._t or (len(self._t) == 1 and 0 in self._t)

    def constant_term(self) -> Scalar:
        return self._t.get(0, 0)

    def is_monomial(self) -> bool:
        return len(self._t) == 1

    def leading_monomial(self) -> tuple[int, Scalar]:
        (m, c), = self._t.items()
        return m, c

    def variables(self) -> set[Variable]:
        slots = set()
        for m in self._t:
            for s, _ in decode(m):
                slots.add(s)
        return {variable_for_slot(s) for s in slots}

    def involves(self, v: Variable) -> bool:
        s = v.slot
        return any(slot_exponent(m, s) for m in self._t)

    def degree_range(self, v: Variable) -> tuple[int, int]:
        s = v.slot
        degs = [slot_exponent(m, s) for m in self._t]
        if not degs:
            return (0, 0)
        return min(degs), max(degs)

    def by_degree(self, v: Variable) -> dict[int, "LaurentPolynomial"]:
        """Split into ``{d: c_d}`` with self = sum c_d * v**d, c_d free of v."""
        s = v.slot
        unit = 1 << (SLOT_BITS * s)
        out: dict[int, dict[int, Scalar]] = {}
        for m, c in self._t.items():
            e = slot_exponent(m, s)
            out.setdefault(e, {})[m - e * unit] = c
        return {e: LaurentPolynomial(d, _trusted=True) for e, d in out.items()}

    def total_degree_range(self) -> tuple[int, int]:
        degs = [sum(e for _, e in decode(m)) for m in self._t]
        if not degs:
            return (0, 0)
        return min(degs), max(degs)

    # arithmetic -------------------------------------------------------

    def __neg__(self) -> "LaurentPolynomial":
        return LaurentPolynomial({m: -c for m, c in self._t.items()}, _trusted=True)

    def __add__(self, other) -> "LaurentPolynomial":
        if not isinstance(other, LaurentPolynomial):
            if isinstance(other, (int, Fraction)):
                other = LaurentPolynomial.constant(other)
            else:
                return NotImplemented
        if len(other._t) > len(self._t):
            a, b = other._t, self._t
        else:
            a, b = self._t, other._t
        out = dict(a)
        for m, c in b.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return LaurentPolynomial(out, _trusted=True)

    __radd__ = __add__

    def __sub__(self, other) -> "LaurentPolynomial":
        if not isinstance(other, LaurentPolynomial):
            if isinstance(other, (int, Fraction)):
                other = LaurentPolynomial.constant(other)
            else:
                return NotImplemented
        out = dict(self._t)
        for m, c in other._t.items():
            v = out.get(m, 0) - c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return LaurentPolynomial(out, _trusted=True)

    def __rsub__(self, other) -> "LaurentPolynomial":
        return (-self) + other

    def __mul__(self, other) -> "LaurentPolynomial":
        if not isinstance(other, LaurentPolynomial):
            if isinstance(other, (int, Fraction)):
                other = _scalar(other)
                if not other:
                    return LaurentPolynomial()
                return LaurentPolynomial({m: c * other for m, c in self._t.items()}, _trusted=True)
            return NotImplemented
        a, b = self._t, other._t
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            (mb, cb), = b.items()
            if cb == 1:
                return LaurentPolynomial({m + mb: c for m, c in a.items()}, _trusted=True)
            return LaurentPolynomial({m + mb: c * cb for m, c in a.items()}, _trusted=True)
        out: dict[int, Scalar] = {}
        get = out.get
        for mb, cb in b.items():
            for ma, ca in a.items():
                k = ma + mb
                out[k] = get(k, 0) + ca * cb
        return LaurentPolynomial({m: c for m, c in out.items() if c}, _trusted=True)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPolynomial":
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse_monomial() ** (-n)
        result = LaurentPolynomial.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def inverse_monomial(self) -> "LaurentPolynomial":
        if len(self._t) != 1:
            raise ValueError("only a single-term Laurent polynomial is invertible")
        (m, c), = self._t.items()
        return LaurentPolynomial({-m: _scalar(Fraction(1) / c)}, _trusted=True)

    def scale(self, c) -> "LaurentPolynomial":
        return self * _scalar(c)

    def shift(self, v: Variable, k: int) -> "LaurentPolynomial":
        """Multiply by v**k."""
        if not k:
            return self
        d = k << (SLOT_BITS * v.slot)
        return LaurentPolynomial({m + d: c for m, c in self._t.items()}, _trusted=True)

    # equality ---------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPolynomial):
            return self._t == other._t
        if isinstance(other, (int, Fraction)):
            if not other:
                return not self._t
            return len(self._t) == 1 and self._t.get(0) == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._t.items()))
        return self._hash

    # substitution -----------------------------------------------------

    def swap(self, u: Variable, v: Variable) -> "LaurentPolynomial":
        su, sv = u.slot, v.slot
        uu, uv = 1 << (SLOT_BITS * su), 1 << (SLOT_BITS * sv)
        out = {}
        for m, c in self._t.items():
            eu, ev = slot_exponent(m, su), slot_exponent(m, sv)
            out[m + (ev - eu) * uu + (eu - ev) * uv] = c
        return LaurentPolynomial(out, _trusted=True)

    def subs_monomial(self, bindings: Mapping[Variable, tuple[Scalar, Mapping[Variable, int]]]) -> "LaurentPolynomial":
        """Substitute each bound variable by ``coeff * monomial``.

        Bindings map a variable to ``(coeff, {var: exp})``.  A zero
        coefficient raised to a negative power is a pole.
        """
        plan = []
        for v, (coeff, target) in bindings.items():
            s = v.slot
            plan.append((s, 1 << (SLOT_BITS * s), _scalar(coeff), pack(target)))
        out: dict[int, Scalar] = {}
        for m, c in self._t.items():
            for s, unit, coeff, tgt in plan:
                e = slot_exponent(m, s)
                if not e:
                    continue
                m += e * (tgt - unit)
                if coeff != 1:
                    if not coeff:
                        if e < 0:
                            raise PoleAtSubstitutionError(f"{variable_for_slot(s)} -> 0 in a negative power")
                        c = 0
                        break
                    c = c * (coeff ** e if e > 0 else Fraction(1) / coeff ** (-e))
            if c:
                v = out.get(m, 0) + c
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return LaurentPolynomial({m: _scalar(c) for m, c in out.items()}, _trusted=True)

    def invert_variables(self, mapping: Mapping[Variable, Variable]) -> "LaurentPolynomial":
        """Substitute v -> w**-1 for every ``v: w`` in ``mapping``."""
        return self.subs_monomial({v: (1, {w: -1}) for v, w in mapping.items()})

    def subs(self, bindings: Mapping[Variable, object]) -> "LaurentPolynomial":
        """Simultaneous substitution by scalars or Laurent polynomials.

        Negative powers are allowed only for scalar or single-term values;
        anything else is not a Laurent polynomial (use RationalFunction).
        """
        mono_bind = {}
        poly_bind = {}
        for v, val in bindings.items():
            if isinstance(val, LaurentPolynomial):
                if val.is_zero():
                    mono_bind[v] = (0, {})
                elif val.is_monomial():
                    m, c = val.leading_monomial()
                    mono_bind[v] = (c, dict(monomial_items(m)))
                else:
                    poly_bind[v] = val
            else:
                mono_bind[v] = (_scalar(val), {})
        if not poly_bind:
            return self.subs_monomial(mono_bind)
        # polynomial values: split off those powers, then expand
        slots = [(v.slot, val) for v, val in poly_bind.items()]
        power_cache: dict[tuple[int, int], LaurentPolynomial] = {}
        acc = LaurentPolynomial()
        groups: dict[tuple[int, ...], dict[int, Scalar]] = {}
        for m, c in self._t.items():
            exps = []
            for s, _ in slots:
                e = slot_exponent(m, s)
                exps.append(e)
                m -= e << (SLOT_BITS * s)
            groups.setdefault(tuple(exps), {})[m] = c
        for exps, rest in groups.items():
            term = LaurentPolynomial(rest, _trusted=True)
            if mono_bind:
                term = term.subs_monomial(mono_bind)
            for (s, val), e in zip(slots, exps):
                if e < 0:
                    raise PoleAtSubstitutionError(
                        f"negative power of {variable_for_slot(s)} under a non-monomial substitution")
                if e:
                    key = (s, e)
                    if key not in power_cache:
                        power_cache[key] = val ** e
                    term = term * power_cache[key]
            acc = acc + term
        return acc

    def evaluate(self, values: Mapping[Variable, Scalar]) -> Scalar:
        r = self.subs({v: _scalar(c) for v, c in values.items()})
        if not r.is_constant():
            raise ValueError(f"unbound variables remain: {sorted(r.variables())}")
        return r.constant_term()

    # rendering --------------------------------------------------------

    def sorted_terms(self) -> list[tuple[int, Scalar]]:
        return sorted(self._t.items(), key=lambda mc: monomial_key(mc[0]))

    def __str__(self) -> str:
        if not self._t:
            return "0"
        parts = []
        for i, (m, c) in enumerate(self.sorted_terms()):
            neg = c < 0
            a = -c if neg else c
            if m == 0:
                body = _fmt_scalar(a)
            elif a == 1:
                body = render_monomial(m)
            else:
                body = f"{_fmt_scalar(a)}*{render_monomial(m)}"
            if i == 0:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f" - {body}" if neg else f" + {body}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPolynomial({str(self)!r})"


def gen(v: Variable, power: int = 1) -> LaurentPolynomial:
    return LaurentPolynomial.gen(v, power)


def const(c) -> LaurentPolynomial:
    return LaurentPolynomial.constant(c)


def product(factors: Iterable[LaurentPolynomial]) -> LaurentPolynomial:
    acc = LaurentPolynomial.constant(1)
    for f in factors:
        acc = acc * f
    return acc


def divide_exact(f: LaurentPolynomial, g: LaurentPolynomial) -> LaurentPolynomial | None:
    """Return f/g if g divides f in the Laurent ring, else None.

    Both sides are shifted into polynomials (g with no monomial factor) so
    ordinary lex division terminates and decides exactness.
    """
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if f.is_zero():
        return LaurentPolynomial()
    if g.is_monomial():
        return f * g.inverse_monomial()
    slots = sorted({s for m in list(f.terms) + list(g.terms) for s, _ in decode(m)}, reverse=True)
    n = len(slots)

    def vec(m):
        return tuple(slot_exponent(m, s) for s in slots)

    gv = [(vec(m), c) for m, c in g.terms.items()]
    fv = [(vec(m), c) for m, c in f.terms.items()]
    gmin = [min(v[i] for v, _ in gv) for i in range(n)]
    fmin = [min(v[i] for v, _ in fv) for i in range(n)]
    gpoly = {tuple(a - b for a, b in zip(v, gmin)): c for v, c in gv}
    rem = {tuple(a - b for a, b in zip(v, fmin)): c for v, c in fv}
    gl = max(gpoly)
    gc = gpoly[gl]
    quot: dict[tuple, Scalar] = {}
    while rem:
        lt = max(rem)
        qv = tuple(a - b for a, b in zip(lt, gl))
        if min(qv) < 0:
            return None
        c = rem[lt]
        qc = c // gc if isinstance(c, int) and isinstance(gc, int) and c % gc == 0 else _scalar(Fraction(c) / gc)
        quot[qv] = qc
        for v, gcoef in gpoly.items():
            k = tuple(a + b for a, b in zip(qv, v))
            val = rem.get(k, 0) - qc * gcoef
            if val:
                rem[k] = val
            else:
                rem.pop(k, None)
    out = {}
    for qv, qc in quot.items():
        m = 0
        for s, e, a, b in zip(slots, qv, fmin, gmin):
            m += (e + a - b) << (SLOT_BITS * s)
        out[m] = qc
    return LaurentPolynomial(out, _trusted=True)
