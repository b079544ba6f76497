from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from kgroth.algebra import (
    LaurentPolynomial, RationalFunction, TruncatedSeries, alpha, beta, epsilon, equal, normalize,
    series_exp, series_expand, solve_linear_exact, substitute, t, x, z,
)
from kgroth.algebra.laurent import divide_exact
from kgroth.errors import (
    InconsistentSystemError, MalformedInputError, PoleAtSubstitutionError, UnderdeterminedSystemError,
)

from conftest import ONE, A, B, Z


# --- Laurent polynomials ---------------------------------------------------------


def test_canonical_rendering():
    assert str(ONE - B(1) * B(2) * A(1, -1) * A(2, -1)) == "1 - b1*b2*a1^-1*a2^-1"
    assert str(ONE - B(1) * A(1, -1)) == "1 - b1*a1^-1"
    assert str(LaurentPolynomial()) == "0"
    assert str(A(1) * Fraction(1, 2) - 3) == "-3 + 1/2*a1"


def test_arithmetic_and_powers():
    p = ONE + A(1)
    assert p ** 2 == ONE + A(1) * 2 + A(1, 2)
    assert (p - p).is_zero()
    assert A(1, -1) * A(1) == ONE
    assert A(1, 3).inverse_monomial() == A(1, -3)


def test_substitutions():
    p = ONE - B(1) * A(1, -1)
    assert p.subs({beta(1): 1}) == ONE - A(1, -1)
    assert p.invert_variables({alpha(1): epsilon(1)}) == ONE - B(1) * LaurentPolynomial.gen(epsilon(1))
    assert p.evaluate({alpha(1): 2, beta(1): 1}) == Fraction(1, 2)
    with pytest.raises(PoleAtSubstitutionError):
        p.subs_monomial({alpha(1): (0, {})})


def test_divide_exact():
    f = A(1, 2) - 1
    assert divide_exact(f, A(1) - 1) == A(1) + 1
    assert divide_exact(f, A(1) - 2) is None


# --- rational functions ------------------------------------------------------------


def test_normalize_cancels_common_factor():
    f = normalize(RationalFunction(A(1, 2) - 1, A(1) - 1))
    assert f.is_laurent() and str(f.to_laurent()) == "1 + a1"


def test_normalize_zero_numerator():
    f = normalize(RationalFunction(LaurentPolynomial(), ONE - Z(1) * A(1)))
    assert f.is_zero() and f.den == ONE


def test_normalize_keeps_canonical_form():
    p = ONE - B(1) * A(1, -1)
    assert normalize(RationalFunction(p)).to_laurent() == p


def test_substitute_examples():
    f = RationalFunction(ONE - B(1) * A(1, -1))
    assert substitute(f, {beta(1): 1}).to_laurent() == ONE - A(1, -1)
    g = substitute(f, {alpha(1): LaurentPolynomial.gen(epsilon(1), -1)})
    assert str(g.to_laurent()) == "1 - b1*e1"


def test_substitute_pole():
    f = RationalFunction(ONE, A(1) - 1)
    with pytest.raises(PoleAtSubstitutionError):
        substitute(f, {alpha(1): 1})


def test_supersymmetric_substitution():
    # a2 = b2 = t in G_{132} leaves G_{213}
    g = ONE - B(1) * B(2) * A(1, -1) * A(2, -1)
    T = LaurentPolynomial.gen(t())
    got = substitute(RationalFunction(g), {alpha(2): T, beta(2): T})
    assert got.to_laurent() == ONE - B(1) * A(1, -1)


small = st.integers(-3, 3)


@st.composite
def laurent(draw, vars_=(alpha(1), alpha(2)), max_terms=3):
    acc = LaurentPolynomial()
    for _ in range(draw(st.integers(1, max_terms))):
        c = draw(st.integers(-4, 4))
        mono = {v: draw(st.integers(-2, 2)) for v in vars_}
        acc = acc + LaurentPolynomial.monomial(mono, c)
    return acc


@st.composite
def ratfunc(draw):
    num = draw(laurent())
    den = draw(laurent())
    if den.is_zero():
        den = ONE
    return RationalFunction(num, den)


@settings(max_examples=40, deadline=None)
@given(ratfunc(), ratfunc(), ratfunc())
def test_field_axioms(f, g, h):
    assert (f + g) + h == f + (g + h)
    assert f * (g + h) == f * g + f * h
    assert f * g == g * f
    if not g.is_zero():
        assert (f / g) * g == f


@settings(max_examples=40, deadline=None)
@given(ratfunc())
def test_normalize_idempotent(f):
    n = normalize(f)
    assert normalize(n).num == n.num and normalize(n).den == n.den
    assert equal(n, f)


# --- linear algebra -----------------------------------------------------------------


def test_solve_examples():
    assert solve_linear_exact([[1, 0], [0, 1]], [5, 7]) == [5, 7]
    assert solve_linear_exact([[2, 0], [0, 3]], [4, 9]) == [2, 3]
    with pytest.raises(InconsistentSystemError):
        solve_linear_exact([[1, 1], [2, 2]], [1, 3])
    with pytest.raises(UnderdeterminedSystemError) as e:
        solve_linear_exact([[1, 1], [2, 2]], [1, 2])
    assert e.value.rank == 1
    with pytest.raises(MalformedInputError):
        solve_linear_exact([[1, 2]], [1, 2])


@settings(max_examples=30, deadline=None)
@given(st.lists(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=6), min_size=4, max_size=4),
                min_size=4, max_size=4),
       st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=6), min_size=4, max_size=4))
def test_solve_random(Am, b):
    try:
        sol = solve_linear_exact(Am, b)
    except (InconsistentSystemError, UnderdeterminedSystemError):
        return
    for row, bi in zip(Am, b):
        assert sum(Fraction(a) * xv for a, xv in zip(row, sol)) == bi


# --- series -------------------------------------------------------------------------


def test_geometric_series():
    T = LaurentPolynomial.gen(t())
    s = series_expand(RationalFunction(ONE, ONE - T), t(), 3)
    assert [s.coefficient(i) for i in range(4)] == [ONE] * 4
    with pytest.raises(ValueError):
        s.coefficient(4)


def test_series_with_pole():
    s = series_expand(RationalFunction(ONE, Z(1) * (ONE - Z(1) * A(1))), z(1), 1)
    assert s.valuation == -1
    assert [s.coefficient(e) for e in (-1, 0, 1)] == [ONE, A(1), A(1, 2)]


def _poly(c):
    return c.to_laurent() if isinstance(c, RationalFunction) else c


def test_series_double_expansion_reproduces_grid():
    X1, X2 = LaurentPolynomial.gen(x(1)), LaurentPolynomial.gen(x(2))
    f = RationalFunction(ONE - X1 * 2 + X1 * X1, X2 - X1 * 2 + X1 * X1)
    s = series_expand(f, x(1), 3)
    assert _poly(s.coefficient(0)) == LaurentPolynomial.gen(x(2), -1)
    # column x1^2 of the grid: 1, -5, 4 in rows x2^-1, x2^-2, x2^-3
    assert _poly(s.coefficient(2)) == (LaurentPolynomial.gen(x(2), -1) - LaurentPolynomial.gen(x(2), -2) * 5
                                       + LaurentPolynomial.gen(x(2), -3) * 4)


@settings(max_examples=25, deadline=None)
@given(laurent(vars_=(t(), alpha(1))), laurent(vars_=(t(), alpha(1))))
def test_series_multiplicative(p, q):
    T = LaurentPolynomial.gen(t())
    f = RationalFunction(p, ONE - T * A(1))
    g = RationalFunction(q, ONE + T * 2)
    lhs = series_expand(f * g, t(), 3)
    rhs = series_expand(f, t(), 6) * series_expand(g, t(), 6)
    for e in range(min(lhs.valuation, rhs.valuation), 4):
        assert equal(RationalFunction.coerce(lhs.coefficient(e)), RationalFunction.coerce(rhs.coefficient(e)))


def test_series_exp():
    zero = TruncatedSeries(t(), 1, (Fraction(0),) * 3)
    assert [series_exp(zero).coefficient(i) for i in range(4)] == [ONE, 0, 0, 0]
    e1 = series_exp(TruncatedSeries(t(), 1, (Fraction(1), 0, 0)))
    assert [e1.coefficient(i) for i in range(4)] == [1, 1, Fraction(1, 2), Fraction(1, 6)]
    e2 = series_exp(TruncatedSeries(t(), 1, (Fraction(2), 0)))
    assert [e2.coefficient(i) for i in range(3)] == [1, 2, 2]
    with pytest.raises(MalformedInputError):
        series_exp(TruncatedSeries(t(), 0, (Fraction(1), Fraction(1))))
