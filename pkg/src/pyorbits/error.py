from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from .lattice import Sublattice


class PyOrbitsError(Exception):
    """Base class for all pyorbits errors."""

    def __init__(self, message: str, *args: object) -> None:
        super().__init__(message, *args)
        self.message = message

    def __str__(self) -> str:
        return self.message

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}({self.message})"


class ParameterRangeError(PyOrbitsError, ValueError):
    """Raised when an argument is outside of its documented range."""

    def __init__(self, name: str, value: object, expected: str) -> None:
        self.name = name
        self.value = value
        super().__init__(f"Parameter <{name}> must be {expected}, got {value!r}")


class NotASuperlatticeError(PyOrbitsError, ValueError):
    """Raised when a Möbius value is requested for a pair that is not an
    interval of the subgroup poset."""

    def __init__(self, upper: Sublattice, lower: Sublattice) -> None:
        self.upper = upper
        self.lower = lower
        super().__init__(f"{upper} does not contain {lower}")


class NonExpansiveError(PyOrbitsError):
    """Raised when an operation requires an expansive polynomial but a zero
    on the torus was found."""

    def __init__(self, poly: str, witness: tuple[float, float]) -> None:
        self.poly = poly
        self.witness = witness
        super().__init__(
            f"Polynomial <{poly}> vanishes on the torus near (s, t) = "
            f"({witness[0]:.6f}, {witness[1]:.6f})"
        )


class ExpansivenessUndeterminedError(PyOrbitsError):
    """Raised when subdivision could neither certify nor refute
    expansiveness."""

    def __init__(self, poly: str, max_depth: int) -> None:
        self.poly = poly
        self.max_depth = max_depth
        super().__init__(
            f"Could not decide expansiveness of <{poly}> within subdivision depth {max_depth}"
        )


class FloatPathResidualError(PyOrbitsError):
    """Raised when the exponentiated log-measure is too far from an
    integer to be trusted as a periodic point count."""

    def __init__(self, lattice: Sublattice, residual: float) -> None:
        self.lattice = lattice
        self.residual = residual
        super().__init__(f"Float path for {lattice} has residual {residual:.3g}")


class IntegrityError(PyOrbitsError):
    """Raised when an exact identity that must hold is violated (indicates a
    bug upstream)."""


class ReportFormatError(PyOrbitsError, ValueError):
    """Raised when a serialized report cannot be loaded."""

    def __init__(self, path: str, cause: BaseException) -> None:
        self.path = path
        self.cause = cause
        super().__init__(f"Invalid report field <{path}>: {cause}")
