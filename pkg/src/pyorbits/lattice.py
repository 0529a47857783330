"""Finite-index sublattices of ℤ² in Hermite normal form.

Every subgroup of index n in ℤ² has a unique basis ``(a, 0), (b, c)`` with
``a * c == n`` and ``0 <= b < a``. This module enumerates them, computes
their annihilators in the dual torus and answers containment queries.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, NamedTuple

import numpy as np
from sympy import divisors as _sympy_divisors

from .error import NotASuperlatticeError, ParameterRangeError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True, order=True)
class Sublattice:
    """The lattice ``L(a, b, c) = <(a, 0), (b, c)>``.

    Ordering is lexicographic in ``(a, b, c)``, which is the enumeration
    order used throughout the package.
    """

    a: int
    b: int
    c: int

    def __post_init__(self) -> None:
        if self.a < 1 or self.c < 1:
            raise ParameterRangeError("a, c", (self.a, self.c), "positive integers")

        if not 0 <= self.b < self.a:
            raise ParameterRangeError("b", self.b, f"in [0, {self.a - 1}]")

    @property
    def index(self) -> int:
        return self.a * self.c

    @property
    def generators(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return (self.a, 0), (self.b, self.c)

    def contains_vector(self, x: int, y: int) -> bool:
        """True if ``(x, y)`` is an integer combination of the generators."""
        if y % self.c:
            return False
        return (x - (y // self.c) * self.b) % self.a == 0

    def __str__(self) -> str:
        return f"L({self.a},{self.b},{self.c})"


FULL_LATTICE = Sublattice(1, 0, 1)
"""ℤ² itself."""


class DualPoint(NamedTuple):
    """A rational point of the torus ℝ²/ℤ², both coordinates in [0, 1)."""

    s: Fraction
    t: Fraction

    def __add__(self, other: object) -> DualPoint:  # type: ignore[override]
        if not isinstance(other, DualPoint):
            return NotImplemented
        return DualPoint((self.s + other.s) % 1, (self.t + other.t) % 1)

    def __neg__(self) -> DualPoint:
        return DualPoint(-self.s % 1, -self.t % 1)


@dataclass(frozen=True, slots=True)
class Annihilator:
    """The finite dual group of a sublattice."""

    points: tuple[DualPoint, ...]
    source: Sublattice

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[DualPoint]:
        return iter(self.points)

    def as_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """Coordinates as float arrays, for evaluation on the torus."""
        s = np.fromiter((float(p.s) for p in self.points), dtype=float, count=len(self.points))
        t = np.fromiter((float(p.t) for p in self.points), dtype=float, count=len(self.points))
        return s, t


def divisors(n: int) -> list[int]:
    """Positive divisors of n in increasing order."""
    return [int(d) for d in _sympy_divisors(n)]


def index(lattice: Sublattice) -> int:
    return lattice.index


@lru_cache(maxsize=4096)
def _enumerate(n: int) -> tuple[Sublattice, ...]:
    return tuple(sublattice(a, b, n // a) for a in divisors(n) for b in range(a))


def enumerate_sublattices(n: int) -> list[Sublattice]:
    """All sublattices of index n, lexicographic in (a, b).

    Raises:
        ParameterRangeError: if n < 1.
    """
    if n < 1:
        raise ParameterRangeError("n", n, "a positive integer")

    return list(_enumerate(n))


def girth(lattice: Sublattice) -> float:
    """Euclidean length of the shortest nonzero vector of the lattice.

    Exhaustive search over ``m*(a, 0) + k*(b, c)`` with ``|m|, |k|`` up to
    ``2 * max(a, b + c)``.
    """
    radius = 2 * max(lattice.a, lattice.b + lattice.c)
    return _girth_within(lattice, radius)


def _girth_within(lattice: Sublattice, radius: int) -> float:
    m = np.arange(-radius, radius + 1, dtype=np.int64)
    best = math.inf

    # One row of the coefficient box at a time keeps memory linear in radius
    for k in range(-radius, radius + 1):
        norms = np.hypot(m * lattice.a + k * lattice.b, float(k * lattice.c))
        if k == 0:
            norms[radius] = np.inf
        best = min(best, float(norms.min()))

    return best


def annihilator(lattice: Sublattice) -> Annihilator:
    """The points ``(j/a, k/c - j*b/(a*c) mod 1)`` of the dual group."""
    a, b, c = lattice.a, lattice.b, lattice.c
    points = tuple(
        DualPoint(Fraction(j, a), (Fraction(k, c) - Fraction(j * b, a * c)) % 1)
        for j in range(a)
        for k in range(c)
    )
    return Annihilator(points=points, source=lattice)


def contains(outer: Sublattice, inner: Sublattice) -> bool:
    """True if ``inner`` is a subgroup of ``outer``."""
    return outer.contains_vector(inner.a, 0) and outer.contains_vector(inner.b, inner.c)


@lru_cache(maxsize=None)
def sublattice(a: int, b: int, c: int) -> Sublattice:
    """Interned `Sublattice` constructor for hot loops."""
    return Sublattice(a, b, c)


def _candidate_offsets(a: int, b: int, k: int) -> Iterator[int]:
    """Solutions ``b'`` in ``[0, a)`` of ``k * b' == b (mod a)``."""
    g = math.gcd(k, a)
    if b % g:
        return

    step = a // g
    base = 0 if step == 1 else (b // g) * pow(k // g, -1, step) % step
    yield from range(base, a, step)


@lru_cache(maxsize=65536)
def _superlattices(lattice: Sublattice) -> tuple[Sublattice, ...]:
    found: list[Sublattice] = []

    # A superlattice L(a', b', c') has a' | a and c' | c; b' is then pinned
    # down by (b, c) lying in it
    for a_out in divisors(lattice.a):
        for c_out in divisors(lattice.c):
            for b_out in _candidate_offsets(a_out, lattice.b, lattice.c // c_out):
                candidate = sublattice(a_out, b_out, c_out)
                if contains(candidate, lattice):
                    found.append(candidate)

    found.sort(key=lambda m: (m.index, m.a, m.b))
    return tuple(found)


def superlattices(lattice: Sublattice) -> list[Sublattice]:
    """All ``L' >= lattice``, including the lattice itself and ℤ².

    Ordered by index, then lexicographically.
    """
    return list(_superlattices(lattice))


def iter_superlattices(lattice: Sublattice) -> tuple[Sublattice, ...]:
    """Same as `superlattices` without copying the memoized tuple."""
    return _superlattices(lattice)


def quotient_invariants(outer: Sublattice, inner: Sublattice) -> tuple[int, int]:
    """Invariant factors ``(d1, d2)``, ``d1 | d2``, of ``outer / inner``.

    Raises:
        NotASuperlatticeError: if ``outer`` does not contain ``inner``.
    """
    if not contains(outer, inner):
        raise NotASuperlatticeError(outer, inner)

    # inner generators written in the basis of outer: lower triangular matrix
    m1 = inner.a // outer.a
    n2 = inner.c // outer.c
    m2 = (inner.b - n2 * outer.b) // outer.a

    d1 = math.gcd(m1, m2, n2)
    return d1, (m1 * n2) // d1


@lru_cache(maxsize=None)
def sublattice_count(d: int, n: int) -> int:
    """Number of subgroups of index n in ℤ^d.

    Uses ``a_n(ℤ^d) = sum_{m | n} m^(d-1) a_{n/m}(ℤ^(d-1))`` with
    ``a_n(ℤ) = 1``.
    """
    if d < 1 or n < 1:
        raise ParameterRangeError("(d, n)", (d, n), "a pair of positive integers")

    if d == 1:
        return 1

    return sum(m ** (d - 1) * sublattice_count(d - 1, n // m) for m in divisors(n))


def sublattice_counts(d: int, max_index: int) -> list[int]:
    """``[a_1(ℤ^d), ..., a_N(ℤ^d)]`` for ``N = max_index``, by a divisor sieve.

    Entry ``i`` of the result is the count for index ``i + 1``.
    """
    if d < 1 or max_index < 1:
        raise ParameterRangeError("(d, max_index)", (d, max_index), "a pair of positive integers")

    counts = [1] * (max_index + 1)
    counts[0] = 0

    for dim in range(2, d + 1):
        nxt = [0] * (max_index + 1)
        for m in range(1, max_index + 1):
            weight = m ** (dim - 1)
            for q in range(1, max_index // m + 1):
                nxt[m * q] += weight * counts[q]
        counts = nxt

    return counts[1:]
