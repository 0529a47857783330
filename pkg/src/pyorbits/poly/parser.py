from __future__ import annotations

import logging

from lark import Lark, Token, UnexpectedInput
from lark.visitors import Transformer

from .. import config
from .error import PolynomialSyntaxError, ZeroPolynomialError
from .grammar import POLYNOMIAL_GRAMMAR
from .laurent import LaurentPoly

logger = logging.getLogger(__name__)

Term = tuple[int, int, int]
"""``(coeff, x exponent, y exponent)`` of a single parsed term."""


class PolynomialTransformer(Transformer[Token, list[Term]]):
    def poly(self, args: list[Token | Term]) -> list[Term]:
        ret: list[Term] = []
        sign = 1

        for arg in args:
            if isinstance(arg, Token):
                sign = -1 if arg == "-" else 1
                continue

            coeff, a, b = arg
            ret.append((sign * coeff, a, b))
            sign = 1

        return ret

    def term(self, args: list[Token | tuple[str, int]]) -> Term:
        coeff = 1
        a = b = 0

        for arg in args:
            if isinstance(arg, Token):
                coeff = int(arg)
                continue

            var, exp = arg
            if var == "x":
                a += exp
            else:
                b += exp

        return coeff, a, b

    def factor(self, args: list[Token | int]) -> tuple[str, int]:
        var = str(args[0])
        exp = args[1] if len(args) > 1 else 1
        return var, int(exp)

    def exponent(self, args: list[Token]) -> int:
        return int(args[0])


polynomial_parser = Lark(
    grammar=POLYNOMIAL_GRAMMAR,
    start="poly",
    parser="lalr",
    transformer=PolynomialTransformer(),
)


def parse_poly(text: str) -> LaurentPoly:
    """Parse an integer Laurent polynomial such as ``"3 + x + y"``.

    Like terms are combined and zero terms dropped.

    Raises:
        PolynomialSyntaxError: if the text does not follow the grammar.
        ZeroPolynomialError: if every coefficient cancels.
    """
    try:
        terms: list[Term] = polynomial_parser.parse(text)  # type: ignore[assignment]
    except UnexpectedInput as e:
        # Errors at the end of input carry no stream position
        position = e.pos_in_stream
        if position is None or position < 0:
            position = len(text)
        raise PolynomialSyntaxError(
            text=text,
            position=position,
            line=e.line,
            column=e.column,
            context=e.get_context(text) if position < len(text) else text,
        ) from None

    coefficients: dict[tuple[int, int], int] = {}
    for coeff, a, b in terms:
        coefficients[(a, b)] = coefficients.get((a, b), 0) + coeff

    if not any(coefficients.values()):
        raise ZeroPolynomialError(text)

    poly = LaurentPoly.from_mapping(coefficients)

    if config.TRACE_LOGGING:
        logger.debug(f"Parsed <{text}> as <{poly}>")

    return poly
