"""Möbius function of the poset of finite-index subgroups of ℤ².

``moebius(upper, lower)`` is defined for ``lower <= upper`` by
``mu(L, L) = 1`` and ``sum_{lower <= M <= upper} mu(M, lower) = 0``.

The value only depends on the isomorphism type of the finite quotient
``upper / lower``, so the recursion is always run on the canonical interval
``[L(d1, 0, d2), ℤ²]`` and memoized under both the canonical and the
requested key.
"""
from __future__ import annotations

import logging
from typing import NamedTuple

from . import config
from .error import NotASuperlatticeError, ParameterRangeError
from .lattice import (
    FULL_LATTICE,
    Sublattice,
    contains,
    enumerate_sublattices,
    quotient_invariants,
    superlattices,
)

logger = logging.getLogger(__name__)


class IntervalKey(NamedTuple):
    lower: Sublattice
    upper: Sublattice


class MoebiusCache:
    """Memo table of Möbius values.

    Duplicate inserts always carry equal values, so concurrent writers are
    harmless (last write wins). With ``store_raw=False`` only the canonical
    intervals are kept, which bounds the table by the number of quotient
    types seen.
    """

    def __init__(self, *, store_raw: bool = True) -> None:
        self.table: dict[IntervalKey, int] = {}
        self.store_raw = store_raw

    def get(self, key: IntervalKey) -> int | None:
        return self.table.get(key)

    def put(self, key: IntervalKey, value: int) -> None:
        self.table[key] = value

    def __len__(self) -> int:
        return len(self.table)

    def __contains__(self, key: IntervalKey) -> bool:
        return key in self.table


def moebius(upper: Sublattice, lower: Sublattice, cache: MoebiusCache | None = None) -> int:
    """Return ``mu(upper, lower)``.

    Args:
        upper: The larger subgroup.
        lower: The smaller subgroup, must be contained in ``upper``.
        cache: Memo table. A private one is used when omitted.

    Raises:
        NotASuperlatticeError: if ``upper`` does not contain ``lower``.
    """
    if cache is None:
        cache = MoebiusCache()

    key = IntervalKey(lower, upper)
    if cache.store_raw:
        cached = cache.get(key)
        if cached is not None:
            return cached

    # Raises NotASuperlatticeError for non-intervals
    d1, d2 = quotient_invariants(upper, lower)

    value = _canonical_moebius(d1, d2, cache)
    if cache.store_raw:
        cache.put(key, value)
    return value


def _canonical_moebius(d1: int, d2: int, cache: MoebiusCache) -> int:
    lower = Sublattice(d1, 0, d2)
    key = IntervalKey(lower, FULL_LATTICE)

    cached = cache.get(key)
    if cached is not None:
        return cached

    if lower == FULL_LATTICE:
        value = 1
    else:
        # Every M >= lower lies below ℤ², so no extra containment filter
        value = -sum(
            moebius(middle, lower, cache)
            for middle in superlattices(lower)
            if middle != FULL_LATTICE
        )

    if config.TRACE_LOGGING:
        logger.debug(f"mu for quotient Z/{d1} x Z/{d2} is {value}")

    cache.put(key, value)
    return value


def interval(upper: Sublattice, lower: Sublattice) -> list[Sublattice]:
    """All ``M`` with ``lower <= M <= upper``.

    Raises:
        NotASuperlatticeError: if ``upper`` does not contain ``lower``.
    """
    if not contains(upper, lower):
        raise NotASuperlatticeError(upper, lower)

    return [m for m in superlattices(lower) if contains(upper, m)]


def moebius_profile(max_index: int, cache: MoebiusCache | None = None) -> dict[int, int]:
    """Largest ``|mu(L', L)|`` over all ``L`` of each index up to ``max_index``
    and all ``L' >= L``."""
    if max_index < 1:
        raise ParameterRangeError("max_index", max_index, "a positive integer")

    if cache is None:
        cache = MoebiusCache()

    profile: dict[int, int] = {}
    for n in range(1, max_index + 1):
        profile[n] = max(
            abs(moebius(upper, lower, cache))
            for lower in enumerate_sublattices(n)
            for upper in superlattices(lower)
        )

    logger.debug(f"Möbius profile up to index {max_index}: max |mu| = {max(profile.values())}")
    return profile
