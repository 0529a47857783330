"""Integer Laurent polynomials in two variables: parsing, evaluation on the
torus and expansiveness certificates."""
from .error import (
    LogDomainError,
    PolynomialError,
    PolynomialFileError,
    PolynomialSyntaxError,
    ZeroPolynomialError,
)
from .expansive import (
    ExpansivenessCertificate,
    ExpansivenessVerdict,
    check_expansive,
    require_expansive,
    variation_bound,
)
from .laurent import LaurentPoly, Monomial, evaluate, log_abs
from .parser import parse_poly

__all__ = [
    "ExpansivenessCertificate",
    "ExpansivenessVerdict",
    "LaurentPoly",
    "LogDomainError",
    "Monomial",
    "PolynomialError",
    "PolynomialFileError",
    "PolynomialSyntaxError",
    "ZeroPolynomialError",
    "check_expansive",
    "evaluate",
    "log_abs",
    "parse_poly",
    "require_expansive",
    "variation_bound",
]
