from .laurent import LaurentPolynomial, const, divide_exact, gen, product
from .linalg import solve_linear_exact
from .ratfunc import RationalFunction, equal, normalize, substitute
from .series import TruncatedSeries, series_exp, series_expand
from .variables import Variable, abar, alpha, bbar, beta, epsilon, omega, sigma, t, tau, x, z

__all__ = [
    "LaurentPolynomial", "RationalFunction", "TruncatedSeries", "Variable",
    "const", "divide_exact", "equal", "gen", "normalize", "product",
    "series_exp", "series_expand", "solve_linear_exact", "substitute",
    "abar", "alpha", "bbar", "beta", "epsilon", "omega", "sigma", "t", "tau", "x", "z",
]
