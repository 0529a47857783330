import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from pyorbits.error import NotASuperlatticeError, ParameterRangeError
from pyorbits.lattice import (
    FULL_LATTICE,
    Sublattice,
    contains,
    enumerate_sublattices,
    superlattices,
)
from pyorbits.moebius import IntervalKey, MoebiusCache, interval, moebius, moebius_profile


def naive_moebius(upper: Sublattice, lower: Sublattice) -> int:
    """Plain recursion over the interval, without any memo."""
    if upper == lower:
        return 1

    return -sum(
        naive_moebius(middle, lower)
        for middle in superlattices(lower)
        if middle != upper and contains(upper, middle)
    )


def test_moebius_diagonal() -> None:
    for lattice in enumerate_sublattices(12):
        assert moebius(lattice, lattice) == 1


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_moebius_prime_index(p: int) -> None:
    for lattice in enumerate_sublattices(p):
        assert moebius(FULL_LATTICE, lattice) == -1


@pytest.mark.parametrize("p", [2, 3, 5])
def test_moebius_elementary_abelian(p: int) -> None:
    assert moebius(FULL_LATTICE, Sublattice(p, 0, p)) == p


@pytest.mark.parametrize("p", [2, 3])
def test_moebius_cyclic_prime_square(p: int) -> None:
    assert moebius(FULL_LATTICE, Sublattice(1, 0, p * p)) == 0
    assert moebius(FULL_LATTICE, Sublattice(p * p, 1, 1)) == 0


def test_moebius_cyclic_squarefree() -> None:
    assert moebius(FULL_LATTICE, Sublattice(1, 0, 6)) == 1
    assert moebius(FULL_LATTICE, Sublattice(30, 7, 1)) == -1


@pytest.mark.parametrize("n", range(1, 17))
def test_moebius_matches_naive_recursion(n: int) -> None:
    cache = MoebiusCache()
    for lower in enumerate_sublattices(n):
        for upper in superlattices(lower):
            assert moebius(upper, lower, cache) == naive_moebius(upper, lower)


@pytest.mark.parametrize("n", [6, 8, 12, 18])
def test_moebius_interval_sums_vanish(n: int) -> None:
    for lower in enumerate_sublattices(n):
        for upper in superlattices(lower):
            if upper == lower:
                continue
            assert sum(moebius(m, lower) for m in interval(upper, lower)) == 0


@settings(max_examples=50, deadline=None)
@given(st.integers(min_value=1, max_value=24), st.data())
def test_moebius_inverts_upper_sums(n: int, data: st.DataObject) -> None:
    candidates = enumerate_sublattices(n)
    lower = candidates[data.draw(st.integers(min_value=0, max_value=len(candidates) - 1))]
    span = superlattices(lower)

    values = {m: data.draw(st.integers(min_value=-100, max_value=100)) for m in span}
    summed = {m: sum(values[k] for k in superlattices(m)) for m in span}

    cache = MoebiusCache()
    for m in span:
        assert sum(moebius(k, m, cache) * summed[k] for k in superlattices(m)) == values[m]


def test_moebius_rejects_non_interval() -> None:
    with pytest.raises(NotASuperlatticeError):
        moebius(Sublattice(2, 0, 1), Sublattice(1, 0, 2))

    with pytest.raises(NotASuperlatticeError):
        interval(Sublattice(2, 0, 1), Sublattice(1, 0, 2))


def test_moebius_cache_keys() -> None:
    cache = MoebiusCache()
    lower = Sublattice(4, 2, 4)

    value = moebius(Sublattice(2, 0, 2), lower, cache)

    assert IntervalKey(lower, Sublattice(2, 0, 2)) in cache
    assert cache.get(IntervalKey(lower, Sublattice(2, 0, 2))) == value
    # The canonical interval of the quotient type is stored as well
    assert IntervalKey(Sublattice(1, 0, 4), FULL_LATTICE) in cache


def test_moebius_cache_canonical_only() -> None:
    cache = MoebiusCache(store_raw=False)

    for lower in enumerate_sublattices(12):
        for upper in superlattices(lower):
            moebius(upper, lower, cache)

    assert all(key.upper == FULL_LATTICE for key in cache.table)
    assert all(key.lower.b == 0 for key in cache.table)


def test_interval() -> None:
    assert interval(FULL_LATTICE, Sublattice(2, 0, 2)) == superlattices(Sublattice(2, 0, 2))
    assert interval(Sublattice(2, 0, 1), Sublattice(4, 0, 2)) == [
        Sublattice(2, 0, 1),
        Sublattice(2, 0, 2),
        Sublattice(4, 0, 1),
        Sublattice(4, 2, 1),
        Sublattice(4, 0, 2),
    ]


def test_moebius_profile() -> None:
    profile = moebius_profile(8)

    assert list(profile) == list(range(1, 9))
    assert profile[1] == 1
    assert profile[2] == 1
    assert profile[4] == 2
    assert profile[8] >= 2

    with pytest.raises(ParameterRangeError):
        moebius_profile(0)
