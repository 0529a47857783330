from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Mapping, NamedTuple

import numpy as np
import numpy.typing as npt

from .. import config
from .error import LogDomainError, ZeroPolynomialError

FloatArray = npt.NDArray[np.float64]
ComplexArray = npt.NDArray[np.complex128]


class Monomial(NamedTuple):
    """The term ``coeff * x^a * y^b``."""

    a: int
    b: int
    coeff: int


@dataclass(frozen=True)
class LaurentPoly:
    """An integer Laurent polynomial in ``x`` and ``y``.

    Terms are kept sorted by exponent and never carry a zero coefficient.
    Use `LaurentPoly.from_mapping` to build one from a coefficient table.
    """

    terms: tuple[Monomial, ...]

    def __post_init__(self) -> None:
        if not self.terms:
            raise ZeroPolynomialError("0")

        if any(m.coeff == 0 for m in self.terms):
            raise ValueError("LaurentPoly terms must have nonzero coefficients")

        exps = [(m.a, m.b) for m in self.terms]
        if exps != sorted(set(exps)):
            raise ValueError("LaurentPoly terms must be sorted with unique exponents")

    @classmethod
    def from_mapping(cls, coefficients: Mapping[tuple[int, int], int]) -> LaurentPoly:
        terms = tuple(
            Monomial(a, b, c) for (a, b), c in sorted(coefficients.items()) if c != 0
        )
        return cls(terms)

    @property
    def coefficients(self) -> dict[tuple[int, int], int]:
        return {(m.a, m.b): m.coeff for m in self.terms}

    def __iter__(self) -> Iterator[Monomial]:
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    @property
    def is_constant(self) -> bool:
        return len(self.terms) == 1 and self.terms[0].a == 0 and self.terms[0].b == 0

    @property
    def coefficient_sum(self) -> int:
        return sum(m.coeff for m in self.terms)

    @property
    def lipschitz_bound(self) -> float:
        """Upper bound for the gradient of ``(s, t) -> f(e(s), e(t))``."""
        return 2 * math.pi * sum(abs(m.coeff) * (abs(m.a) + abs(m.b)) for m in self.terms)

    @property
    def support_span(self) -> tuple[int, int, int, int]:
        """Bounding box ``(min a, max a, min b, max b)`` of the exponents."""
        a = [m.a for m in self.terms]
        b = [m.b for m in self.terms]
        return min(a), max(a), min(b), max(b)

    def restrict_to_line(
        self, p0: int, q0: int, u: int, v: int
    ) -> tuple[npt.NDArray[np.int64], npt.NDArray[np.int64]]:
        """Exponent data of f along the curve ``(q0*tau, -p0*tau)``.

        Returns the frequency ``a*q0 - b*p0`` of each monomial in ``tau`` and
        the integer ``a*u + b*v`` that scales its phase shift from one
        connected component to the next.
        """
        return (
            self.exponents_a * q0 - self.exponents_b * p0,
            self.exponents_a * u + self.exponents_b * v,
        )

    @cached_property
    def exponents_a(self) -> npt.NDArray[np.int64]:
        return np.array([m.a for m in self.terms], dtype=np.int64)

    @cached_property
    def exponents_b(self) -> npt.NDArray[np.int64]:
        return np.array([m.b for m in self.terms], dtype=np.int64)

    @cached_property
    def coeffs(self) -> FloatArray:
        return np.array([float(m.coeff) for m in self.terms], dtype=np.float64)

    def evaluate(self, s: FloatArray | float, t: FloatArray | float) -> ComplexArray:
        """Evaluate ``f(e^{2 pi i s}, e^{2 pi i t})`` for arrays of torus
        coordinates (broadcast together)."""
        s_red = np.mod(np.asarray(s, dtype=np.float64), 1.0)
        t_red = np.mod(np.asarray(t, dtype=np.float64), 1.0)

        out = np.zeros(np.broadcast(s_red, t_red).shape, dtype=np.complex128)
        for m in self.terms:
            phase = np.mod(m.a * s_red + m.b * t_red, 1.0)
            out += m.coeff * np.exp(2j * np.pi * phase)

        return out

    def evaluate_phases(self, numerators: npt.NDArray[np.int64], denominator: int) -> ComplexArray:
        """Evaluate at points given as exact phases.

        ``numerators`` has shape ``(len(self), ...)``; row ``i`` holds
        ``a_i * s + b_i * t`` scaled by ``denominator``.
        """
        phases = np.mod(numerators, denominator).astype(np.float64) / denominator
        return np.tensordot(self.coeffs, np.exp(2j * np.pi * phases), axes=1)

    def canonical(self) -> str:
        """Canonical text form that `parse_poly` reads back to the same polynomial."""
        out: list[str] = []

        for i, m in enumerate(self.terms):
            factors = [_format_var("x", m.a), _format_var("y", m.b)]
            monomial = "*".join(f for f in factors if f)

            magnitude = abs(m.coeff)
            if not monomial:
                body = str(magnitude)
            elif magnitude == 1:
                body = monomial
            else:
                body = f"{magnitude}*{monomial}"

            if i == 0:
                out.append(f"-{body}" if m.coeff < 0 else body)
            else:
                out.append(f"- {body}" if m.coeff < 0 else f"+ {body}")

        return " ".join(out)

    def __str__(self) -> str:
        return self.canonical()


def _format_var(name: str, exp: int) -> str:
    if exp == 0:
        return ""
    if exp == 1:
        return name
    return f"{name}^{exp}"


def evaluate(f: LaurentPoly, s: float, t: float) -> complex:
    """Evaluate f at the torus point ``(s, t)`` (coordinates taken mod 1)."""
    return complex(f.evaluate(s, t))


def log_abs(f: LaurentPoly, s: float, t: float, *, zero_threshold: float | None = None) -> float:
    """Return ``log |f(e(s), e(t))|``.

    Raises:
        LogDomainError: if the modulus is below the zero threshold.
    """
    if zero_threshold is None:
        zero_threshold = config.ZERO_THRESHOLD

    modulus = abs(evaluate(f, s, t))
    if modulus < zero_threshold:
        raise LogDomainError(s, t, modulus)

    return math.log(modulus)
