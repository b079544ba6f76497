"""Double stable Grothendieck polynomials, iterated residues and K-theoretic Thom polynomials."""
from . import errors
from .algebra import LaurentPolynomial, RationalFunction
from .errors import KGrothError

__version__ = "0.1.0"

__all__ = ["KGrothError", "LaurentPolynomial", "RationalFunction", "errors", "__version__"]
