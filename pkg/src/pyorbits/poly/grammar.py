POLYNOMIAL_GRAMMAR = r"""
poly: SIGN? term (SIGN term)*

term: COEFF factor*
    | factor+

factor: "*"? VAR exponent?

exponent: "^" EXPONENT

SIGN: "+" | "-"

VAR: "x" | "y"

COEFF: /[0-9]+/

EXPONENT: /[+-]?[0-9]+/

%import common.WS

%ignore WS
"""
