import math

import pytest
from pyorbits.counting import (
    CountCache,
    CountRow,
    CountSeries,
    fixed_points_exact,
    fixed_points_float,
    girth_profile,
    log_periodic_points,
    mertens,
    orbit_count,
    periodic_points,
    pi_count,
)
from pyorbits.error import ParameterRangeError
from pyorbits.lattice import FULL_LATTICE, Sublattice, enumerate_sublattices, superlattices
from pyorbits.measures import growth_rate
from pyorbits.poly import LaurentPoly, parse_poly

EXAMPLES = ("3+x+y", "2+x*y^2", "x-2", "5")


@pytest.mark.parametrize(
    "text, lattice, expected",
    [
        ("3+x+y", FULL_LATTICE, 5),
        ("3+x+y", Sublattice(3, 0, 1), 65),
        ("3+x+y", Sublattice(1, 0, 4), 255),
        ("2+x*y^2", Sublattice(2, 1, 2), 81),
        ("x-2", Sublattice(3, 1, 2), 49),
        ("x-2", Sublattice(3, 0, 1), 7),
        ("x-2", Sublattice(1, 0, 3), 1),
    ],
)
def test_periodic_points(text: str, lattice: Sublattice, expected: int) -> None:
    f = parse_poly(text)

    assert fixed_points_exact(f, lattice) == expected
    assert fixed_points_float(f, lattice) == expected
    assert periodic_points(f, lattice) == expected


@pytest.mark.parametrize("n", [1, 2, 6, 12])
def test_periodic_points_constant(five: LaurentPoly, n: int) -> None:
    for lattice in enumerate_sublattices(n):
        assert periodic_points(five, lattice) == 5**n


@pytest.mark.parametrize("text", EXAMPLES)
def test_exact_and_float_paths_agree(text: str) -> None:
    f = parse_poly(text)

    for n in range(1, 25):
        for lattice in enumerate_sublattices(n):
            assert fixed_points_exact(f, lattice) == fixed_points_float(f, lattice)


def test_periodic_points_above_threshold(three_x_y: LaurentPoly) -> None:
    lattice = Sublattice(5, 2, 6)
    expected = fixed_points_exact(three_x_y, lattice)

    assert periodic_points(three_x_y, lattice, exact_threshold=4) == expected

    cache = CountCache(three_x_y, exact_threshold=4)
    assert periodic_points(three_x_y, lattice, cache=cache) == expected
    assert cache.fixed[lattice] == expected


def test_periodic_points_threshold_from_config(five: LaurentPoly, pyorbits_config) -> None:
    with pyorbits_config(exact_threshold=0):
        assert periodic_points(five, Sublattice(4, 1, 20)) == 5**80


def test_log_periodic_points(three_x_y: LaurentPoly) -> None:
    lattice = Sublattice(3, 0, 1)

    assert log_periodic_points(three_x_y, lattice) == pytest.approx(math.log(65))


def test_count_cache_checks_polynomial(three_x_y: LaurentPoly, five: LaurentPoly) -> None:
    cache = CountCache(three_x_y)

    with pytest.raises(ValueError):
        periodic_points(five, FULL_LATTICE, cache=cache)

    with pytest.raises(ValueError):
        orbit_count(five, FULL_LATTICE, cache)


@pytest.mark.parametrize(
    "text, lattice, expected",
    [
        ("5", FULL_LATTICE, 5),
        ("3+x+y", FULL_LATTICE, 5),
        ("5", Sublattice(2, 0, 1), 10),
        ("5", Sublattice(1, 0, 2), 10),
        ("5", Sublattice(2, 0, 2), (625 - 3 * 25 + 2 * 5) // 4),
    ],
)
def test_orbit_count(text: str, lattice: Sublattice, expected: int) -> None:
    assert orbit_count(parse_poly(text), lattice) == expected


@pytest.mark.parametrize("text", EXAMPLES)
def test_orbit_identity(text: str) -> None:
    f = parse_poly(text)
    cache = CountCache(f)

    for n in range(1, 25):
        for lattice in enumerate_sublattices(n):
            orbits = orbit_count(f, lattice, cache)
            assert orbits >= 0

            total = sum(m.index * orbit_count(f, m, cache) for m in superlattices(lattice))
            assert total == periodic_points(f, lattice, cache=cache)


@pytest.mark.parametrize(
    "text, max_index, expected",
    [("5", 1, 5), ("3+x+y", 1, 5), ("5", 2, 35)],
)
def test_pi_count(text: str, max_index: int, expected: int) -> None:
    assert pi_count(parse_poly(text), max_index) == expected


def test_pi_count_range(five: LaurentPoly) -> None:
    with pytest.raises(ParameterRangeError):
        pi_count(five, 0)


def test_mertens_constant(five: LaurentPoly) -> None:
    series = mertens(five, 2, math.log(5))

    assert len(series) == 2
    assert series.exact
    assert series.polynomial == "5"

    first, second = series[1], series[2]
    assert first.a_n == 1
    assert first.sum_f == 5
    assert first.pi == 5
    assert first.mertens == pytest.approx(1.0)
    assert first.m1 == pytest.approx(1.0)

    assert second.a_n == 3
    assert second.sum_f == 75
    assert second.pi == 35
    assert second.mertens == pytest.approx(1 + 30 / 25)
    assert second.m1 == pytest.approx(1 + 75 / 25 / 2)
    assert second.pi1 == pytest.approx(5 + 75 / 2)
    assert second.pi2 == pytest.approx(35 - 5 - 75 / 2)

    # Without a growth report everything lands in the last class
    assert second.n4 == pytest.approx(second.m1)
    assert second.n1 == second.n2 == second.n3 == 0


@pytest.mark.parametrize("text", EXAMPLES)
def test_mertens_invariants(text: str) -> None:
    f = parse_poly(text)
    growth = growth_rate(f, 4, 64, certify=False)
    series = mertens(f, 16, growth.g, growth=growth)

    assert series.tie_tolerance == growth.tie_tolerance

    previous = None
    for row in series.rows:
        assert row.mertens == pytest.approx(row.m1 + row.m2, rel=1e-9)
        assert row.m1 == pytest.approx(row.n1 + row.n2 + row.n3 + row.n4, rel=1e-9)
        if previous is not None:
            assert row.pi >= previous.pi
            assert row.mertens >= previous.mertens
        previous = row


def test_mertens_float_mode_matches_exact(three_x_y: LaurentPoly) -> None:
    growth = growth_rate(three_x_y, 4, 64, certify=False)
    exact = mertens(three_x_y, 20, growth.g, growth=growth)
    approx = mertens(three_x_y, 20, growth.g, growth=growth, exact=False)

    assert not approx.exact
    for e, a in zip(exact.rows, approx.rows, strict=True):
        assert a.sum_f is None and a.pi is None
        assert a.mertens == pytest.approx(e.mertens, rel=1e-9)
        assert a.m1 == pytest.approx(e.m1, rel=1e-9)
        assert (a.n1, a.n2, a.n3, a.n4) == pytest.approx((e.n1, e.n2, e.n3, e.n4), rel=1e-9)


def test_mertens_witness_classes(three_x_y: LaurentPoly) -> None:
    growth = growth_rate(three_x_y, 4, 64, certify=False)
    series = mertens(three_x_y, 1, growth.g, growth=growth)

    # ℤ² lies in both witness families: F = 5 against e^g = 4
    assert series[1].n1 == pytest.approx(5 / 4)
    assert series[1].n2 == series[1].n3 == series[1].n4 == 0


@pytest.mark.parametrize("a", range(3, 17, 2))
def test_periodic_points_witness_family(two_xy2: LaurentPoly, a: int) -> None:
    lattice = Sublattice(a, (a + 1) // 2, 1)

    assert periodic_points(two_xy2, lattice) == 3**a


def test_witness_family_is_unclassified(two_xy2: LaurentPoly) -> None:
    growth = growth_rate(two_xy2, 4, 64, certify=False)

    assert growth.b_witnesses == [(1, 2)]
    assert growth.classify(Sublattice(5, 1, 2)) == 3
    for a in (3, 5, 7, 99):
        assert growth.classify(Sublattice(a, (a + 1) // 2, 1)) == 4


@pytest.mark.slow
def test_mertens_remainder_bounded(three_x_y: LaurentPoly) -> None:
    series = mertens(three_x_y, 300, math.log(4), exact=False)

    assert len(series) == 300
    assert max(abs(row.m2) for row in series.rows) <= 10


def test_mertens_ranges(five: LaurentPoly) -> None:
    for g in (0.0, -1.0):
        with pytest.raises(ParameterRangeError):
            mertens(five, 2, g)

    with pytest.raises(ParameterRangeError):
        mertens(five, 0, 1.0)


def test_count_series_serialization(five: LaurentPoly) -> None:
    series = mertens(five, 24, math.log(5))
    text = series.to_json()

    # sum_F for n = 24 is far above 2^53
    assert f'"{series[24].sum_f}"' in text

    loaded = CountSeries.from_json(text)
    assert loaded == series
    assert isinstance(loaded[24].sum_f, int)


def test_count_row_small_ints_stay_numbers() -> None:
    row = CountRow(n=1, a_n=1, mertens=1.0, m1=1.0, m2=0.0, n1=0, n2=0, n3=0, n4=1.0, sum_f=5, pi=5)

    assert row.as_dict()["sum_f"] == 5
    assert CountRow.from_dict(row.as_dict()) == row


def test_girth_profile(three_x_y: LaurentPoly) -> None:
    h = math.log(3)
    points = girth_profile(three_x_y, [Sublattice(a, 0, a) for a in (2, 4, 8, 16)])

    assert [p.girth for p in points] == [2.0, 4.0, 8.0, 16.0]

    errors = [abs(p.rate - h) for p in points]
    assert errors == sorted(errors, reverse=True)
    assert errors[-1] < 0.05
