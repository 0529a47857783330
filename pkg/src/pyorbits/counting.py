"""Periodic point counts ``F(L)``, orbit counts ``O(L)`` and the sums built
from them.

``F(L)`` is the number of points fixed by every shift in ``L``; it equals
``|prod f(e(s), e(t))|`` over the annihilator of ``L``. Orbits with
stabilizer exactly ``L`` are recovered by Möbius inversion over the
superlattices of ``L``.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, NamedTuple

from mpmath import mp
from sympy import ZZ
from sympy.polys.matrices import DomainMatrix

from . import config
from .error import FloatPathResidualError, IntegrityError, ParameterRangeError
from .lattice import Sublattice, enumerate_sublattices, girth, iter_superlattices
from .measures import GrowthReport, m_finite
from .moebius import MoebiusCache, moebius
from .poly import LaurentPoly
from .serialize import DataClassSerializeMixin, big_int_from_wire, big_int_to_wire

logger = logging.getLogger(__name__)

_GUARD_DIGITS = 20


@dataclass
class CountCache:
    """Memo tables shared by the counting functions for one polynomial."""

    poly: LaurentPoly
    exact_threshold: int = field(default_factory=lambda: config.EXACT_THRESHOLD)
    moebius: MoebiusCache = field(default_factory=lambda: MoebiusCache(store_raw=False))
    fixed: dict[Sublattice, int] = field(default_factory=dict)
    log_fixed: dict[Sublattice, float] = field(default_factory=dict)

    def check(self, f: LaurentPoly) -> None:
        if f != self.poly:
            raise ValueError(f"CountCache for <{self.poly}> used with <{f}>")


def _cache_for(f: LaurentPoly, cache: CountCache | None) -> CountCache:
    if cache is None:
        return CountCache(f)

    cache.check(f)
    return cache


def fixed_points_exact(f: LaurentPoly, lattice: Sublattice) -> int:
    """``F(L)`` as the absolute determinant of multiplication by f on the
    group ring of ``ℤ²/L``.

    Cosets are represented by ``(x, y)`` with ``0 <= x < a`` and
    ``0 <= y < c``; the determinant is taken by fraction-free elimination.
    """
    a, b, c = lattice.a, lattice.b, lattice.c
    n = a * c
    rows = [[0] * n for _ in range(n)]

    for x in range(a):
        for y in range(c):
            row = rows[x * c + y]
            for m in f:
                yy = y + m.b
                q, yr = divmod(yy, c)
                xr = (x + m.a - q * b) % a
                row[xr * c + yr] += m.coeff

    matrix = DomainMatrix([[ZZ(v) for v in row] for row in rows], (n, n), ZZ)
    return abs(int(matrix.det()))


def fixed_points_float(f: LaurentPoly, lattice: Sublattice) -> int:
    """``F(L)`` as the rounded product of ``|f|`` over the annihilator, in
    extended precision.

    Raises:
        FloatPathResidualError: if the product is not within
            ``config.FLOAT_RESIDUAL`` of an integer.
    """
    a, b, c = lattice.a, lattice.b, lattice.c
    n = a * c

    # Enough digits to resolve the integer part with room to spare
    digits = int(n * max(m_finite(f, lattice), 0.0) / math.log(10)) + 1
    terms = list(f)

    with mp.workdps(max(30, digits + _GUARD_DIGITS)):
        total = mp.mpf(1)
        for j in range(a):
            for k in range(c):
                value = mp.mpc(0)
                for m in terms:
                    numerator = (m.a * j * c + m.b * (k * a - j * b)) % n
                    value += m.coeff * mp.expjpi(mp.mpf(2 * numerator) / n)
                total *= abs(value)

        nearest = int(mp.nint(total))
        residual = float(abs(total - nearest))

    if residual >= config.FLOAT_RESIDUAL:
        raise FloatPathResidualError(lattice, residual)

    return nearest


def periodic_points(
    f: LaurentPoly,
    lattice: Sublattice,
    *,
    exact_threshold: int | None = None,
    cache: CountCache | None = None,
) -> int:
    """Number of points fixed by ``lattice``.

    The determinant path is used up to ``exact_threshold``; above it the
    extended precision path, falling back to the determinant when its
    result is not close enough to an integer.
    """
    if cache is not None:
        cache.check(f)
        cached = cache.fixed.get(lattice)
        if cached is not None:
            return cached

        if exact_threshold is None:
            exact_threshold = cache.exact_threshold

    if exact_threshold is None:
        exact_threshold = config.EXACT_THRESHOLD

    if lattice.index <= exact_threshold:
        value = fixed_points_exact(f, lattice)
    else:
        try:
            value = fixed_points_float(f, lattice)
        except FloatPathResidualError as e:
            logger.warning(f"{e.message}; using the determinant instead")
            value = fixed_points_exact(f, lattice)

    if cache is not None:
        cache.fixed[lattice] = value

    return value


def log_periodic_points(f: LaurentPoly, lattice: Sublattice, cache: CountCache | None = None) -> float:
    """``log F(L)`` from the finite Mahler measure, without big integers."""
    if cache is not None:
        cached = cache.log_fixed.get(lattice)
        if cached is not None:
            return cached

    value = lattice.index * m_finite(f, lattice)

    if cache is not None:
        cache.log_fixed[lattice] = value

    return value


def orbit_count(f: LaurentPoly, lattice: Sublattice, cache: CountCache | None = None) -> int:
    """Number of orbits whose stabilizer is exactly ``lattice``.

    Raises:
        IntegrityError: if the Möbius sum is negative or not divisible by the
            index.
    """
    cache = _cache_for(f, cache)

    total = 0
    for upper in iter_superlattices(lattice):
        mu = moebius(upper, lattice, cache.moebius)
        if mu:
            total += mu * periodic_points(f, upper, cache=cache)

    count, remainder = divmod(total, lattice.index)
    if remainder or total < 0:
        raise IntegrityError(
            f"Möbius sum {total} for {lattice} under <{f}> is not a non-negative "
            f"multiple of {lattice.index}"
        )

    return count


def pi_count(f: LaurentPoly, max_index: int, cache: CountCache | None = None) -> int:
    """Number of closed orbits with stabilizer of index at most ``max_index``."""
    if max_index < 1:
        raise ParameterRangeError("N", max_index, "a positive integer")

    cache = _cache_for(f, cache)
    return sum(
        orbit_count(f, lattice, cache)
        for n in range(1, max_index + 1)
        for lattice in enumerate_sublattices(n)
    )


@dataclass
class CountRow(DataClassSerializeMixin):
    n: int
    a_n: int
    mertens: float
    m1: float
    m2: float
    n1: float
    n2: float
    n3: float
    n4: float
    sum_f: int | None = None
    pi: int | None = None
    pi1: float | None = None
    pi2: float | None = None

    def __post_serialize__(self, d: dict[str, Any]) -> dict[str, Any]:
        for key in ("sum_f", "pi"):
            if d.get(key) is not None:
                d[key] = big_int_to_wire(d[key])
        return super().__post_serialize__(d)

    @classmethod
    def __pre_deserialize__(cls, d: dict[Any, Any]) -> dict[Any, Any]:
        d = dict(d)
        for key in ("sum_f", "pi"):
            if d.get(key) is not None:
                d[key] = big_int_from_wire(d[key])
        return d


@dataclass
class CountSeries(DataClassSerializeMixin):
    polynomial: str
    g: float
    tie_tolerance: float
    exact: bool
    rows: list[CountRow]

    def __getitem__(self, n: int) -> CountRow:
        """Row for index ``n`` (1-based)."""
        return self.rows[n - 1]

    def __len__(self) -> int:
        return len(self.rows)


def _to_float(value: Fraction) -> float | None:
    try:
        return float(value)
    except OverflowError:
        return None


def _exp_shifted(log_value: float, shift: float) -> float:
    return math.exp(log_value - shift)


def mertens(
    f: LaurentPoly,
    max_index: int,
    g: float,
    *,
    growth: GrowthReport | None = None,
    exact: bool = True,
    cache: CountCache | None = None,
) -> CountSeries:
    """Weighted orbit sums ``M(n) = sum O(L) / e^{g [L]}`` for ``n`` up to
    ``max_index``, with the main term ``m1``, the remainder ``m2`` and the
    split of ``m1`` by witness class.

    With ``exact`` the counts are big integers and the series also carries
    ``sum_F``, ``pi`` and the split of ``pi`` into its main term and
    remainder. Without it every quantity is accumulated from ``log F(L)``
    in floating point, which is what large ``max_index`` needs.

    Raises:
        ParameterRangeError: if ``g <= 0`` or ``max_index < 1``.
    """
    if not g > 0:
        raise ParameterRangeError("g", g, "a positive real")
    if max_index < 1:
        raise ParameterRangeError("N", max_index, "a positive integer")

    cache = _cache_for(f, cache)
    tie_tolerance = growth.tie_tolerance if growth is not None else config.TIE_TOLERANCE

    rows: list[CountRow] = []
    total_m = total_m1 = 0.0
    partition = [0.0, 0.0, 0.0, 0.0]
    pi = 0
    pi1 = Fraction(0)

    for n in range(1, max_index + 1):
        lattices = enumerate_sublattices(n)
        shift = g * n
        m_terms: list[float] = []
        m1_terms: list[float] = []
        class_terms: list[list[float]] = [[], [], [], []]
        sum_f = 0

        for lattice in lattices:
            if exact:
                fixed = periodic_points(f, lattice, cache=cache)
                orbits = orbit_count(f, lattice, cache)
                sum_f += fixed
                pi += orbits

                main = _exp_shifted(math.log(fixed), shift) / n if fixed else 0.0
                m_terms.append(_exp_shifted(math.log(orbits), shift) if orbits else 0.0)
            else:
                main = _exp_shifted(log_periodic_points(f, lattice, cache), shift) / n
                m_terms.append(_float_orbit_term(f, lattice, shift, cache))

            m1_terms.append(main)
            cls = growth.classify(lattice) if growth is not None else 4
            class_terms[cls - 1].append(main)

        total_m += math.fsum(m_terms)
        total_m1 += math.fsum(m1_terms)
        for i, terms in enumerate(class_terms):
            partition[i] += math.fsum(terms)

        row = CountRow(
            n=n,
            a_n=len(lattices),
            mertens=total_m,
            m1=total_m1,
            m2=total_m - total_m1,
            n1=partition[0],
            n2=partition[1],
            n3=partition[2],
            n4=partition[3],
        )

        if exact:
            pi1 += Fraction(sum_f, n)
            row.sum_f = sum_f
            row.pi = pi
            row.pi1 = _to_float(pi1)
            row.pi2 = _to_float(pi - pi1)

        rows.append(row)

        if config.TRACE_LOGGING:
            logger.debug(f"n={n}: M={total_m:.15g} M1={total_m1:.15g}")

    logger.debug(f"Mertens series for <{f}> up to {max_index}: M={total_m:.15g}")
    return CountSeries(
        polynomial=str(f),
        g=g,
        tie_tolerance=tie_tolerance,
        exact=exact,
        rows=rows,
    )


def _float_orbit_term(f: LaurentPoly, lattice: Sublattice, shift: float, cache: CountCache) -> float:
    """``O(L) / e^{shift}`` from logarithms of the fixed point counts.

    The ``L' = L`` term dominates; the others are smaller by at least a
    factor ``e^{-g [L] / 2}``.
    """
    terms = []
    for upper in iter_superlattices(lattice):
        mu = moebius(upper, lattice, cache.moebius)
        if mu:
            terms.append(mu * _exp_shifted(log_periodic_points(f, upper, cache), shift))

    return math.fsum(terms) / lattice.index


class GirthPoint(NamedTuple):
    lattice: Sublattice
    girth: float
    rate: float


def girth_profile(
    f: LaurentPoly, lattices: Iterable[Sublattice], cache: CountCache | None = None
) -> list[GirthPoint]:
    """``(girth(L), log F(L) / [L])`` for each lattice.

    As the girth grows the rate approaches the entropy.
    """
    cache = _cache_for(f, cache)
    return [
        GirthPoint(lattice, girth(lattice), log_periodic_points(f, lattice, cache) / lattice.index)
        for lattice in lattices
    ]
