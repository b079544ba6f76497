from fractions import Fraction

import pytest

from kgroth.algebra import LaurentPolynomial, alpha, beta, epsilon, omega, t, x, z


@pytest.fixture
def gen():
    return LaurentPolynomial.gen


ONE = LaurentPolynomial.constant(1)


def A(i, p=1):
    return LaurentPolynomial.gen(alpha(i), p)


def B(j, p=1):
    return LaurentPolynomial.gen(beta(j), p)


def Z(i, p=1):
    return LaurentPolynomial.gen(z(i), p)
