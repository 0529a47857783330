class PolynomialError(Exception):
    """Base class for all polynomial definition errors."""

    def __init__(self, message: str, *args: object) -> None:
        super().__init__(message, *args)
        self.message = message

    def __str__(self) -> str:
        return self.message


class PolynomialSyntaxError(PolynomialError):
    """Raised when a polynomial string does not follow the grammar."""

    def __init__(self, text: str, position: int, line: int, column: int, context: str) -> None:
        self.text = text
        self.position = position
        self.line = line
        self.column = column
        self.context = context
        super().__init__(
            f"Incorrect polynomial definition at position {position}. Context:\n{context}"
        )


class ZeroPolynomialError(PolynomialError):
    """Raised when all coefficients cancel."""

    def __init__(self, text: str) -> None:
        self.text = text
        super().__init__(f"Polynomial <{text}> is identically zero")


class LogDomainError(PolynomialError, ArithmeticError):
    """Raised when log|f| is requested at a zero of f."""

    def __init__(self, s: float, t: float, modulus: float) -> None:
        self.s = s
        self.t = t
        self.modulus = modulus
        super().__init__(f"|f| = {modulus:.3g} at (s, t) = ({s}, {t}); log is undefined")


class PolynomialFileError(PolynomialError):
    """Raised when a polynomial file cannot be read."""

    def __init__(self, path: object, reason: str) -> None:
        self.path = path
        self.reason = reason
        super().__init__(f"Cannot read polynomial from <{path}>: {reason}")
