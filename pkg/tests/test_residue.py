import random
from fractions import Fraction

import pytest

from kgroth.algebra import LaurentPolynomial, RationalFunction, alpha, omega, z
from kgroth.errors import MalformedInputError
from kgroth.grothendieck.gpoly import g_integrand, g_specs
from kgroth.residue import (
    Integrand, Location, ResidueForm, ResidueSpec, all_orders_agree, combine, debug_mode,
    iterated_residue, iterated_terms, residue_at_infinity, residue_at_zero, residue_zero_infinity,
)

from conftest import ONE, A, Z

v = z(1)
V = Z(1)
Y1, Y2 = LaurentPolynomial.gen(omega(1)), LaurentPolynomial.gen(omega(2))


def test_residue_at_zero_examples():
    assert residue_at_zero(RationalFunction(ONE, V), v) == 1
    assert residue_at_zero(RationalFunction(ONE, V * (ONE - V * A(1))), v) == 1
    assert residue_at_zero(RationalFunction(ONE, (V - Y1) * (V - Y2)), v).is_zero()


def test_residue_at_infinity_examples():
    assert residue_at_infinity(RationalFunction(ONE, V), v) == -1
    f = RationalFunction(ONE - V, (ONE - V * A(1)) * V)
    assert residue_at_infinity(f, v) == RationalFunction(-A(1, -1))
    assert residue_at_infinity(RationalFunction(V), v).is_zero()


def test_residue_zero_infinity_examples():
    assert residue_zero_infinity(RationalFunction(ONE, V), v).is_zero()
    assert residue_zero_infinity(RationalFunction(ONE, (V - Y1) * (V - Y2)), v).is_zero()
    f = RationalFunction(ONE - V, (ONE - V * A(1)) * V)
    assert residue_zero_infinity(f, v).to_laurent() == ONE - A(1, -1)


def test_separable_integrand_is_product():
    f1 = Integrand(Z(1, -1), [(ONE - Z(1) * A(1), -1)])
    f2 = Integrand(Z(2, -2), [(ONE - Z(2) * A(2), -1)])
    both = iterated_residue(f1 * f2, [ResidueSpec(z(2)), ResidueSpec(z(1))])
    assert both == residue_zero_infinity(f1, z(1)) * residue_zero_infinity(f2, z(2))


def test_residue_form_measure():
    form = ResidueForm(Integrand(ONE, [(ONE - V * A(1), -1)]), (v,))
    assert iterated_residue(form, [ResidueSpec(v, Location.ZERO)]) == 1
    with pytest.raises(MalformedInputError):
        ResidueForm(ONE, (v, v))


def test_product_example_two_variable_integrand():
    from kgroth.grothendieck.gpoly import g_residue

    # g_2 * g_2 as a single two-variable residue of the product integrand
    f = g_integrand((2,), 3, 0)
    g = g_integrand((2,), 3, 0).subs_monomial({z(1): (1, {z(2): 1})})
    prod = combine(iterated_terms(f * g, [ResidueSpec(z(2)), ResidueSpec(z(1))]))
    want = sum((g_residue(I, 3, 0) * c for I, c in
                [((2, 2), 1), ((3, 1), 1), ((4, 0), 1), ((3, 2), -1), ((4, 1), -1)]), LaurentPolynomial())
    assert prod.to_laurent() == want


def test_duplicate_spec_rejected():
    with pytest.raises(MalformedInputError):
        iterated_residue(Integrand(Z(1, -1)), [ResidueSpec(z(1)), ResidueSpec(z(1))])


def _nonzero(rng):
    while True:
        c = Fraction(rng.randint(-10, 10), rng.randint(1, 3))
        if c:
            return c


@pytest.mark.parametrize("seed", range(20))
def test_vanishing_lemma(seed):
    rng = random.Random(seed)
    r = rng.randint(0, 2)
    s = rng.randint(r + 2, 5)
    for a in range(s - r - 1):
        num = V ** a
        for _ in range(r):
            num = num * (V - _nonzero(rng))
        f = Integrand(num, [(V - _nonzero(rng), -1) for _ in range(s)])
        assert residue_zero_infinity(f, v).is_zero()


@pytest.mark.parametrize("seed", range(10))
def test_global_residue_theorem(seed):
    rng = random.Random(100 + seed)
    poles = []
    while len(poles) < 3:
        p = _nonzero(rng)
        if p not in poles:
            poles.append(p)
    num = ONE
    for _ in range(rng.randint(0, 4)):
        num = num * (V - _nonzero(rng))
    num = num * V ** rng.randint(-2, 1)
    f = Integrand(num, [(V - p, -1) for p in poles])
    total = residue_at_zero(f, v) + residue_at_infinity(f, v)
    for p in poles:
        # simple pole: delete the factor and evaluate at v = p
        rest = Integrand(num, [(V - q, -1) for q in poles if q != p]).to_rational()
        total = total + RationalFunction(rest.num.subs({v: p}), rest.den.subs({v: p}))
    assert total.is_zero()


@pytest.mark.parametrize("seed", range(5))
def test_linearity(seed):
    rng = random.Random(seed)
    f = Integrand(V ** rng.randint(-2, 2), [(ONE - V * A(1), -1), (ONE - V * A(2) * 2, -1)])
    g = Integrand(V ** rng.randint(-2, 2) + 3, [(ONE - V * A(1), -1)])
    c1, c2 = _nonzero(rng), _nonzero(rng)
    lhs = residue_zero_infinity(f.to_rational() * c1 + g.to_rational() * c2, v)
    rhs = residue_zero_infinity(f, v) * c1 + residue_zero_infinity(g, v) * c2
    assert lhs == rhs


@pytest.mark.parametrize("I", [(2, 1), (1, 3), (3, 3, 1), (2, -1, 2)])
def test_g_integrand_order_independent(I):
    assert all_orders_agree(g_integrand(I, 2, 1), g_specs(len(I)))


def test_debug_mode_recomputes():
    f = Integrand(Z(1, -1) * Z(2, -1), [(ONE - Z(1) * A(1), -1), (ONE - Z(2) * A(2), -1)])
    token = debug_mode.set(True)
    try:
        assert iterated_residue(f, [ResidueSpec(z(1)), ResidueSpec(z(2))]) == 1
    finally:
        debug_mode.reset(token)
