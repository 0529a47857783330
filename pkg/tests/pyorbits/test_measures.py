import math

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st
from pyorbits.error import ParameterRangeError
from pyorbits.lattice import FULL_LATTICE, Sublattice
from pyorbits.measures import (
    Dichotomy,
    GrowthReport,
    LineSubgroup,
    entropy,
    growth_rate,
    lemma_check,
    lemma_sample,
    line_for,
    line_nodes,
    m_finite,
    m_line,
    sampling_path_length,
    search_lines,
    shell_deviation,
)
from pyorbits.poly import (
    LaurentPoly,
    LogDomainError,
    parse_poly,
    require_expansive,
    variation_bound,
)

LOG2 = math.log(2)
LOG3 = math.log(3)
LOG4 = math.log(4)
LOG5 = math.log(5)


def test_line_subgroup() -> None:
    assert LineSubgroup.normalized(-2, -4) == LineSubgroup(2, 4)
    assert LineSubgroup.normalized(-3, 0) == LineSubgroup(3, 0)
    assert LineSubgroup.normalized(1, -1) == LineSubgroup(-1, 1)

    line = LineSubgroup(-4, 6)
    assert line.gamma == 2
    assert line.primitive == (-2, 3)
    u, v = line.bezout()
    assert -2 * u + 3 * v == 1
    assert str(line) == "J(-4,6)"

    with pytest.raises(ParameterRangeError):
        LineSubgroup.normalized(0, 0)

    with pytest.raises(ParameterRangeError):
        LineSubgroup(1, -1)

    with pytest.raises(ParameterRangeError):
        LineSubgroup(-1, 0)


def test_search_lines() -> None:
    lines = search_lines(4)

    assert len(lines) == (9 * 9 - 1) // 2
    assert len(set(lines)) == len(lines)
    assert lines[:4] == [LineSubgroup(1, 0), LineSubgroup(2, 0), LineSubgroup(3, 0), LineSubgroup(4, 0)]
    assert all(max(abs(line.p), line.q) <= 4 for line in lines)


@pytest.mark.parametrize(
    "text, lattice, expected",
    [
        ("5", FULL_LATTICE, LOG5),
        ("5", Sublattice(3, 2, 7), LOG5),
        ("3+x+y", FULL_LATTICE, LOG5),
        ("x-2", Sublattice(3, 0, 1), math.log(7) / 3),
        ("x-2", Sublattice(3, 1, 2), math.log(49) / 6),
        ("3+x+y", Sublattice(3, 0, 1), math.log(65) / 3),
        ("3+x+y", Sublattice(1, 0, 4), math.log(255) / 4),
        ("2+x*y^2", Sublattice(2, 1, 2), math.log(81) / 4),
    ],
)
def test_m_finite(text: str, lattice: Sublattice, expected: float) -> None:
    assert m_finite(parse_poly(text), lattice) == pytest.approx(expected, abs=1e-12)


def test_m_finite_at_zero() -> None:
    # 1 + x + y vanishes at (1/3, 2/3), a point of the annihilator of L(3,0,3)
    with pytest.raises(LogDomainError):
        m_finite(parse_poly("1+x+y"), Sublattice(3, 0, 3))


@pytest.mark.parametrize("a", range(1, 9))
def test_m_line_vertical(two_xy2: LaurentPoly, a: int) -> None:
    assert m_line(two_xy2, LineSubgroup(a, 0)) == pytest.approx(LOG2, abs=1e-10)


@pytest.mark.parametrize(
    "text, line, expected",
    [
        ("2+x*y^2", LineSubgroup(1, 2), LOG3),
        ("2+x*y^2", LineSubgroup(2, 4), LOG3 / 2),
        ("3+x+y", LineSubgroup(0, 1), LOG4),
        ("3+x+y", LineSubgroup(1, 0), LOG4),
        ("3+x+y", LineSubgroup(-1, 1), LOG3),
        ("3+x+y", LineSubgroup(1, 1), math.log((3 + math.sqrt(5)) / 2)),
        ("x-2", LineSubgroup(0, 1), LOG2),
        ("x-2", LineSubgroup(1, 3), LOG2),
        ("x-2", LineSubgroup(-5, 7), LOG2),
        ("x-2", LineSubgroup(3, 0), math.log(7) / 3),
        ("5", LineSubgroup(6, 4), LOG5),
    ],
)
def test_m_line(text: str, line: LineSubgroup, expected: float) -> None:
    assert m_line(parse_poly(text), line) == pytest.approx(expected, abs=1e-10)


@pytest.mark.parametrize("text", ["3+x+y", "2+x*y^2", "x-2", "5"])
@pytest.mark.parametrize(
    "line",
    [
        LineSubgroup(1, 1),
        LineSubgroup(-3, 5),
        LineSubgroup(4, 6),
        LineSubgroup(7, 0),
        LineSubgroup(51, 1),
        LineSubgroup(-40, 3),
    ],
)
def test_m_line_node_doubling(text: str, line: LineSubgroup) -> None:
    f = parse_poly(text)

    assert abs(m_line(f, line, 256) - m_line(f, line, 512)) < 1e-10


@pytest.mark.parametrize("nodes", [None, 16, 256])
def test_m_line_steep(two_xy2: LaurentPoly, nodes: int | None) -> None:
    # x*y^2 runs 101 and 83 times around these lines
    assert m_line(two_xy2, LineSubgroup(51, 1), nodes) == pytest.approx(LOG2, abs=1e-10)
    assert m_line(two_xy2, LineSubgroup(-40, 3), nodes) == pytest.approx(LOG2, abs=1e-10)


def test_m_line_nodes(three_x_y: LaurentPoly) -> None:
    with pytest.raises(ParameterRangeError):
        m_line(three_x_y, LineSubgroup(1, 0), 8)

    assert line_nodes(three_x_y, LineSubgroup(1, 1), 64) == 64
    # Frequencies 0, 1 and 40 along this line
    assert line_nodes(three_x_y, LineSubgroup(-40, 1), 64) == 8 * 40


@pytest.mark.parametrize(
    "text, expected",
    [("5", LOG5), ("3+x+y", LOG3), ("2+x*y^2", LOG2), ("x-2", LOG2)],
)
def test_entropy(text: str, expected: float) -> None:
    assert entropy(parse_poly(text)) == pytest.approx(expected, abs=1e-9)


def test_entropy_nodes(three_x_y: LaurentPoly) -> None:
    assert entropy(three_x_y, 128) == pytest.approx(entropy(three_x_y, 256), abs=1e-10)

    with pytest.raises(ParameterRangeError):
        entropy(three_x_y, 15)


def test_growth_rate_excess_b(two_xy2: LaurentPoly) -> None:
    report = growth_rate(two_xy2, 8, 256)

    assert report.h == pytest.approx(LOG2, abs=1e-9)
    assert report.g == pytest.approx(LOG3, abs=1e-9)
    assert report.dichotomy is Dichotomy.EXCESS
    assert report.is_excess
    assert report.a_witnesses == []
    assert report.b_witnesses == [(1, 2)]
    assert report.best_line == (1, 2)
    assert report.gap is not None and report.gap > 0
    assert report.certified
    assert report.search_bound == 8
    assert report.quad_nodes == 256


def test_growth_rate_excess_a_and_b(three_x_y: LaurentPoly) -> None:
    report = growth_rate(three_x_y, 8, 256)

    assert report.h == pytest.approx(LOG3, abs=1e-9)
    assert report.g == pytest.approx(LOG4, abs=1e-9)
    assert report.is_excess
    assert report.a_witnesses == [1]
    assert report.b_witnesses == [(0, 1)]
    assert report.gap is not None and report.gap > 0
    assert report.certified


def test_growth_rate_balanced(x_minus_2: LaurentPoly, five: LaurentPoly) -> None:
    report = growth_rate(x_minus_2, 8, 256)

    assert report.g == pytest.approx(LOG2, abs=1e-9)
    assert report.g == pytest.approx(report.h, abs=1e-8)
    assert report.dichotomy is Dichotomy.BALANCED
    assert report.a_witnesses == []
    assert report.b_witnesses == []
    assert report.best_line is None
    # Closest non-tied value comes from the vertical line with a = 8
    assert report.gap == pytest.approx(LOG2 - math.log(255) / 8, abs=1e-9)

    report = growth_rate(five, 4, 64)
    assert report.g == pytest.approx(LOG5)
    assert report.dichotomy is Dichotomy.BALANCED
    assert report.gap is None


def test_growth_rate_invariants(three_x_y: LaurentPoly) -> None:
    report = growth_rate(three_x_y, 4, 64, certify=False)

    assert report.g >= report.h - 1e-9
    assert report.certified
    assert report.classify(Sublattice(1, 0, 1)) == 1
    assert report.classify(Sublattice(1, 0, 5)) == 2
    assert report.classify(Sublattice(3, 0, 1)) == 3
    assert report.classify(Sublattice(2, 0, 3)) == 4


def test_growth_rate_ranges(three_x_y: LaurentPoly) -> None:
    with pytest.raises(ParameterRangeError):
        growth_rate(three_x_y, 3, 64)

    with pytest.raises(ParameterRangeError):
        growth_rate(three_x_y, 4, 8)


def test_growth_report_serialization(two_xy2: LaurentPoly) -> None:
    report = growth_rate(two_xy2, 4, 64, certify=False)
    data = report.as_dict()

    assert next(iter(data)) == "__type"
    assert data["__type"] == "GrowthReport"
    assert "lambda" in data
    assert "gap" not in data
    assert data["dichotomy"] == "excess"

    assert GrowthReport.from_json(report.to_json()) == report


def test_line_for() -> None:
    assert line_for(Sublattice(2, 1, 5)) == LineSubgroup(2, 0)
    assert line_for(Sublattice(5, 3, 2)) == LineSubgroup(3, 2)
    assert line_for(Sublattice(3, 0, 3)) == LineSubgroup(0, 3)


@pytest.mark.parametrize("text", ["3+x+y", "2+x*y^2", "x-2", "5"])
def test_lemma_check(text: str) -> None:
    check = lemma_check(parse_poly(text), samples=25, max_index=60, seed=3, nodes=128)

    assert len(check.samples) == 25
    assert check.path_violations == 0
    assert check.violations >= check.path_violations


def test_sampling_path_length() -> None:
    assert sampling_path_length(Sublattice(2, 1, 5)) == 1.0
    assert sampling_path_length(Sublattice(3, 0, 3)) == 1.0
    assert sampling_path_length(Sublattice(4, 3, 4)) == pytest.approx(1.25)
    assert sampling_path_length(Sublattice(7, 4, 1)) == pytest.approx(math.sqrt(17))


@pytest.fixture(scope="module")
def two_xy2_variation(two_xy2: LaurentPoly) -> float:
    certificate = require_expansive(two_xy2)
    assert certificate.min_modulus_lower_bound is not None
    return variation_bound(two_xy2, certificate.min_modulus_lower_bound)


@pytest.mark.parametrize("a", [3, 5, 7, 101, 201, 399])
def test_lemma_sample_contains_witness(
    two_xy2: LaurentPoly, two_xy2_variation: float, a: int
) -> None:
    # L(a, (a+1)/2, 1) contains (1, 2), so x*y^2 is 1 on its annihilator
    lattice = Sublattice(a, (a + 1) // 2, 1)

    sample = lemma_sample(two_xy2, lattice, two_xy2_variation)

    assert sample.finite == pytest.approx(LOG3, abs=1e-9)
    assert sample.line == pytest.approx(LOG2, abs=1e-10)
    assert sample.gap == pytest.approx(LOG3 - LOG2, abs=1e-9)
    assert sample.path_bound == pytest.approx(sample.bound * math.hypot(1, (a + 1) / 2))
    assert sample.holds_along_path

    if a == 399:
        assert not sample.holds
        assert sample.ratio > 1


def test_m_finite_approaches_line(three_x_y: LaurentPoly) -> None:
    certificate = require_expansive(three_x_y)
    assert certificate.min_modulus_lower_bound is not None
    alpha = variation_bound(three_x_y, certificate.min_modulus_lower_bound)

    line = LineSubgroup(2, 0)
    target = m_line(three_x_y, line)

    gaps = []
    for c in (8, 16, 32, 64):
        lattice = Sublattice(2, 1, c)
        assert line_for(lattice) == line

        gap = abs(m_finite(three_x_y, lattice) - target)
        assert gap <= alpha / c
        gaps.append(gap)

    assert gaps[-1] < gaps[0]


@given(
    st.integers(min_value=-10**6, max_value=10**6),
    st.integers(min_value=-10**6, max_value=10**6),
)
def test_line_bezout(p: int, q: int) -> None:
    assume(p != 0 or q != 0)

    line = LineSubgroup.normalized(p, q)
    p0, q0 = line.primitive
    u, v = line.bezout()

    assert p0 * u + q0 * v == 1


def test_lemma_check_ranges(three_x_y: LaurentPoly) -> None:
    with pytest.raises(ParameterRangeError):
        lemma_check(three_x_y, samples=0, max_index=10)

    with pytest.raises(ParameterRangeError):
        lemma_check(three_x_y, samples=1, max_index=0)


def test_shell_deviation(three_x_y: LaurentPoly) -> None:
    h = entropy(three_x_y, 256)
    deviations = [shell_deviation(three_x_y, k, 256, h) for k in (8, 16, 32)]

    assert deviations == sorted(deviations, reverse=True)
    assert deviations[-1] < deviations[0]

    with pytest.raises(ParameterRangeError):
        shell_deviation(three_x_y, 0)
