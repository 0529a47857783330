"""Leading constants of ``M(N)`` for the full shift on ℤ^d.

For the full shift ``M(N) ~ C_d N^(d-1)`` with
``C_d = zeta(2) zeta(3) ... zeta(d) / (d - 1)``. Even zeta values are
rational multiples of powers of pi, so ``C_d`` is a rational times a power
of pi times the odd zeta values up to ``d``.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp, mpf
from sympy import bernoulli, factorial

from .error import ParameterRangeError
from .lattice import sublattice_counts
from .serialize import DataClassSerializeMixin

logger = logging.getLogger(__name__)

MIN_DIMENSION = 2
MAX_DIMENSION = 12


@dataclass
class FullShiftConstant(DataClassSerializeMixin):
    d: int
    value: float
    rational: Fraction
    pi_power: int
    odd_zetas: list[int]

    @property
    def closed_form(self) -> str:
        """Text form such as ``zeta(3)·pi^6/1620``."""
        factors = [f"zeta({k})" for k in self.odd_zetas]
        if self.pi_power:
            factors.append(f"pi^{self.pi_power}")

        if self.rational.numerator != 1 or not factors:
            factors.insert(0, str(self.rational.numerator))

        text = "·".join(factors)
        if self.rational.denominator != 1:
            text += f"/{self.rational.denominator}"
        return text

    def evaluate(self, digits: int = 30) -> mpf:
        """High precision value of the closed form."""
        with mp.workdps(digits):
            value = mp.mpf(self.rational.numerator) / self.rational.denominator
            value *= mp.pi**self.pi_power
            for k in self.odd_zetas:
                value *= mp.zeta(k)
            return +value


def even_zeta_rational(k: int) -> Fraction:
    """``r`` with ``zeta(k) = r * pi^k`` for even ``k >= 2``."""
    if k < 2 or k % 2:
        raise ParameterRangeError("k", k, "an even integer >= 2")

    half = k // 2
    value = (-1) ** (half + 1) * bernoulli(k) * 2 ** (k - 1) / factorial(k)
    return Fraction(int(value.p), int(value.q))


def fullshift_constant(d: int) -> FullShiftConstant:
    """Leading coefficient of ``M(N)`` for the full ℤ^d-shift.

    Raises:
        ParameterRangeError: if d is outside ``[2, 12]``.
    """
    if not MIN_DIMENSION <= d <= MAX_DIMENSION:
        raise ParameterRangeError("d", d, f"in [{MIN_DIMENSION}, {MAX_DIMENSION}]")

    rational = Fraction(1, d - 1)
    pi_power = 0
    odd_zetas: list[int] = []

    for k in range(2, d + 1):
        if k % 2:
            odd_zetas.append(k)
        else:
            rational *= even_zeta_rational(k)
            pi_power += k

    constant = FullShiftConstant(
        d=d, value=0.0, rational=rational, pi_power=pi_power, odd_zetas=odd_zetas
    )
    constant.value = float(constant.evaluate())

    logger.debug(f"C_{d} = {constant.closed_form} = {constant.value!r}")
    return constant


def fullshift_mertens_partial(d: int, max_index: int) -> float:
    """``sum_{n <= N} a_n(ℤ^d) / n``, which is ``M(N)`` for the full shift."""
    if d < MIN_DIMENSION:
        raise ParameterRangeError("d", d, f"at least {MIN_DIMENSION}")
    if max_index < 1:
        raise ParameterRangeError("N", max_index, "a positive integer")

    counts = sublattice_counts(d, max_index)
    return math.fsum(count / n for n, count in enumerate(counts, start=1))

