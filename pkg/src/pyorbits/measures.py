"""Logarithmic Mahler measures over finite and one-dimensional subgroups of
the torus, and the growth rate derived from them."""
from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
import numpy.typing as npt
from mashumaro import field_options

try:
    from sympy.core.intfunc import igcdex
except ImportError:  # sympy < 1.13
    from sympy.core.numbers import igcdex

from . import config
from .error import ParameterRangeError
from .lattice import Sublattice, enumerate_sublattices
from .poly import LaurentPoly, LogDomainError, require_expansive, variation_bound
from .serialize import DataClassSerializeMixin

logger = logging.getLogger(__name__)

MIN_NODES = 16
MIN_SEARCH_BOUND = 4
_ROUNDING_SLACK = 1e-12


@dataclass(frozen=True, slots=True, order=True)
class LineSubgroup:
    """The one-dimensional closed subgroup ``{(s, t) : p*s + q*t in ℤ}``.

    Normalized so that ``q > 0``, or ``q == 0`` and ``p > 0``. ``(a, 0)``
    is the annihilator of ``(a, 0)`` and ``(b, c)`` with ``c >= 1`` the
    annihilator of ``(b, c)``.
    """

    p: int
    q: int

    def __post_init__(self) -> None:
        if not (self.q > 0 or (self.q == 0 and self.p > 0)):
            raise ParameterRangeError("(p, q)", (self.p, self.q), "q > 0, or q == 0 and p > 0")

    @classmethod
    def normalized(cls, p: int, q: int) -> LineSubgroup:
        if p == 0 and q == 0:
            raise ParameterRangeError("(p, q)", (p, q), "a nonzero vector")

        if q < 0 or (q == 0 and p < 0):
            p, q = -p, -q
        return cls(p, q)

    @property
    def gamma(self) -> int:
        """Number of connected components."""
        return math.gcd(self.p, self.q)

    @property
    def primitive(self) -> tuple[int, int]:
        g = self.gamma
        return self.p // g, self.q // g

    def bezout(self) -> tuple[int, int]:
        """``(u, v)`` with ``p0*u + q0*v == 1`` for the primitive vector."""
        p0, q0 = self.primitive
        u, v, g = igcdex(p0, q0)
        assert g == 1
        return int(u), int(v)

    def __str__(self) -> str:
        return f"J({self.p},{self.q})"


def _log_modulus(values: npt.NDArray[np.complex128], zero_threshold: float) -> npt.NDArray[np.float64]:
    moduli = np.abs(values)
    if moduli.min() < zero_threshold:
        raise LogDomainError(math.nan, math.nan, float(moduli.min()))
    return np.log(moduli)


def m_finite(f: LaurentPoly, lattice: Sublattice) -> float:
    """Average of ``log |f|`` over the annihilator of ``lattice``.

    ``index * m_finite(f, L)`` is ``log F(L)``, the logarithm of the number
    of points fixed by ``L``.

    Raises:
        LogDomainError: if f vanishes at an annihilator point.
    """
    a, b, c = lattice.a, lattice.b, lattice.c
    n = a * c

    j = np.repeat(np.arange(a, dtype=np.int64), c)
    k = np.tile(np.arange(c, dtype=np.int64), a)

    # s = j*c/n and t = (k*a - j*b)/n exactly
    numerators = (
        f.exponents_a[:, None] * (j * c)[None, :] + f.exponents_b[:, None] * (k * a - j * b)[None, :]
    )
    values = f.evaluate_phases(numerators, n)
    return float(_log_modulus(values, config.ZERO_THRESHOLD).mean())


def line_nodes(f: LaurentPoly, line: LineSubgroup, nodes: int) -> int:
    """Starting quadrature nodes per component, raised for lines along which
    f oscillates quickly."""
    p0, q0 = line.primitive
    u, v = line.bezout()
    freq, _ = f.restrict_to_line(p0, q0, u, v)
    span = int(freq.max() - freq.min())
    return max(nodes, config.LINE_OVERSAMPLING * span)


def _line_log_sum(
    f: LaurentPoly,
    freq: npt.NDArray[np.int64],
    shift: npt.NDArray[np.int64],
    gamma: int,
    eff: int,
    i: npt.NDArray[np.int64],
) -> float:
    comp = np.arange(gamma, dtype=np.int64)

    # Point (q0*tau + l*u/gamma, -p0*tau + l*v/gamma) with tau = i/eff
    numerators = (freq[:, None, None] * (i * gamma)[None, None, :]) + (
        shift[:, None, None] * (comp * eff)[None, :, None]
    )
    values = f.evaluate_phases(numerators, eff * gamma)
    return math.fsum(_log_modulus(values, config.ZERO_THRESHOLD).ravel())


def m_line(f: LaurentPoly, line: LineSubgroup, nodes: int | None = None) -> float:
    """Mahler measure of f restricted to a one-dimensional subgroup.

    Each of the ``gamma`` components is integrated with the periodic
    trapezoid rule. Starting from `line_nodes`, the node count is doubled
    (reusing the previous nodes) until two successive values agree to
    ``config.LINE_TOLERANCE``.

    Raises:
        ParameterRangeError: if fewer than 16 nodes are requested.
        LogDomainError: if f vanishes at a quadrature node.
    """
    if nodes is None:
        nodes = config.QUAD_NODES
    if nodes < MIN_NODES:
        raise ParameterRangeError("nodes", nodes, f"at least {MIN_NODES}")

    gamma = line.gamma
    p0, q0 = line.primitive
    u, v = line.bezout()
    eff = line_nodes(f, line, nodes)
    freq, shift = f.restrict_to_line(p0, q0, u, v)

    total = _line_log_sum(f, freq, shift, gamma, eff, np.arange(eff, dtype=np.int64))
    value = total / (gamma * eff)

    while True:
        if 2 * eff * gamma > config.LINE_MAX_POINTS:
            logger.warning(
                f"m({line}) of <{f}> did not settle below {config.LINE_TOLERANCE:g} "
                f"with {eff} nodes per component"
            )
            return value

        # The doubled rule adds the midpoints of the current one
        total += _line_log_sum(
            f, freq, shift, gamma, 2 * eff, np.arange(1, 2 * eff, 2, dtype=np.int64)
        )
        eff *= 2
        refined = total / (gamma * eff)

        if abs(refined - value) < config.LINE_TOLERANCE:
            if config.TRACE_LOGGING:
                logger.debug(f"m({line}) of <{f}> settled with {eff} nodes per component")
            return refined
        value = refined


def entropy(f: LaurentPoly, nodes: int | None = None) -> float:
    """Logarithmic Mahler measure of f over the whole torus, by the tensor
    product trapezoid rule."""
    if nodes is None:
        nodes = config.QUAD_NODES
    if nodes < MIN_NODES:
        raise ParameterRangeError("nodes", nodes, f"at least {MIN_NODES}")

    i = np.arange(nodes, dtype=np.int64)
    numerators = (
        f.exponents_a[:, None, None] * i[None, :, None] + f.exponents_b[:, None, None] * i[None, None, :]
    )
    values = f.evaluate_phases(numerators, nodes)
    return float(_log_modulus(values, config.ZERO_THRESHOLD).mean())


@enum.unique
class Dichotomy(str, enum.Enum):
    EXCESS = "excess"
    BALANCED = "balanced"


@dataclass
class GrowthReport(DataClassSerializeMixin):
    h: float
    g: float
    dichotomy: Dichotomy
    a_witnesses: list[int]
    b_witnesses: list[tuple[int, int]]
    gap: float | None = field(default=None, metadata=field_options(alias="lambda"))
    certified: bool = False
    best_line: tuple[int, int] | None = None
    search_bound: int = config.SEARCH_BOUND
    quad_nodes: int = config.QUAD_NODES
    tie_tolerance: float = config.TIE_TOLERANCE

    class Config(DataClassSerializeMixin.Config):
        serialize_by_alias = True

    @property
    def is_excess(self) -> bool:
        return self.dichotomy is Dichotomy.EXCESS

    def classify(self, lattice: Sublattice) -> int:
        """Which of the four witness classes ``lattice`` falls in.

        1: both ``(a, 0)`` and ``(b, c)`` are witnesses, 2: only ``(a, 0)``,
        3: only ``(b, c)``, 4: neither.
        """
        in_a = lattice.a in self.a_witnesses
        in_b = (lattice.b, lattice.c) in self.b_witnesses
        if in_a and in_b:
            return 1
        if in_a:
            return 2
        if in_b:
            return 3
        return 4


def search_lines(bound: int) -> list[LineSubgroup]:
    """Normalized ``(p, q)`` with ``|p|, |q| <= bound``, by increasing ``q``
    then ``p``."""
    return [
        LineSubgroup(p, q)
        for q in range(bound + 1)
        for p in range(-bound, bound + 1)
        if q > 0 or p > 0
    ]


def _scan(f: LaurentPoly, bound: int, nodes: int) -> tuple[float, dict[LineSubgroup, float]]:
    h = entropy(f, nodes)
    values = {line: m_line(f, line, nodes) for line in search_lines(bound)}
    return h, values


def growth_rate(
    f: LaurentPoly,
    search_bound: int | None = None,
    nodes: int | None = None,
    *,
    tie_tolerance: float | None = None,
    certify: bool = True,
) -> GrowthReport:
    """Growth rate ``g = max(h, sup m(K))`` over the line subgroups in the
    search box.

    When ``certify`` is set the search is repeated with twice the box and
    twice the nodes; the report is certified if ``g`` moves by less than
    ``config.CERTIFY_TOLERANCE``.

    Raises:
        ParameterRangeError: if ``search_bound < 4`` or ``nodes < 16``.
    """
    if search_bound is None:
        search_bound = config.SEARCH_BOUND
    if nodes is None:
        nodes = config.QUAD_NODES
    if tie_tolerance is None:
        tie_tolerance = config.TIE_TOLERANCE

    if search_bound < MIN_SEARCH_BOUND:
        raise ParameterRangeError("search_bound", search_bound, f"at least {MIN_SEARCH_BOUND}")
    if nodes < MIN_NODES:
        raise ParameterRangeError("nodes", nodes, f"at least {MIN_NODES}")

    h, values = _scan(f, search_bound, nodes)
    best_line = max(values, key=lambda line: values[line])
    g = max(h, values[best_line])

    excess = g - h > tie_tolerance
    a_witnesses: list[int] = []
    b_witnesses: list[tuple[int, int]] = []
    if excess:
        for line, m in values.items():
            if abs(m - g) <= tie_tolerance:
                if line.q == 0:
                    a_witnesses.append(line.p)
                else:
                    b_witnesses.append((line.p, line.q))

    gaps = [g - m for m in (h, *values.values()) if abs(g - m) > tie_tolerance]
    gap = min(gaps) if gaps else None

    certified = not certify
    if certify:
        h2, values2 = _scan(f, 2 * search_bound, 2 * nodes)
        g2 = max(h2, *values2.values())
        certified = abs(g2 - g) < config.CERTIFY_TOLERANCE
        if not certified:
            logger.warning(
                f"Growth rate of <{f}> moved from {g!r} to {g2!r} on the doubled search; "
                "reporting it as uncertified"
            )

    report = GrowthReport(
        h=h,
        g=g,
        dichotomy=Dichotomy.EXCESS if excess else Dichotomy.BALANCED,
        a_witnesses=sorted(a_witnesses),
        b_witnesses=sorted(b_witnesses),
        gap=gap,
        certified=certified,
        best_line=(best_line.p, best_line.q) if excess else None,
        search_bound=search_bound,
        quad_nodes=nodes,
        tie_tolerance=tie_tolerance,
    )

    logger.debug(f"Growth of <{f}>: h={h:.12g} g={g:.12g} {report.dichotomy.value}")
    return report


def line_for(lattice: Sublattice) -> LineSubgroup:
    """The line subgroup whose Mahler measure approximates ``m_finite`` on
    ``lattice``: the annihilator of ``(a, 0)`` when ``a < c``, otherwise
    that of ``(b, c)``."""
    if lattice.a < lattice.c:
        return LineSubgroup(lattice.a, 0)
    return LineSubgroup(lattice.b, lattice.c)


def sampling_path_length(lattice: Sublattice) -> float:
    """Length of the curve in each component of ``line_for(lattice)`` along
    which the annihilator points are equally spaced.

    The annihilator of ``L(a, b, c)`` with ``a >= c`` samples
    ``tau -> (tau, k/c - b*tau/c)`` at ``tau = j/a``, which winds ``b/c``
    times around the second circle.
    """
    if lattice.a < lattice.c:
        return 1.0
    return math.hypot(1.0, lattice.b / lattice.c)


class LemmaSample(NamedTuple):
    lattice: Sublattice
    finite: float
    line: float
    bound: float
    path_bound: float

    @property
    def gap(self) -> float:
        return abs(self.finite - self.line)

    @property
    def ratio(self) -> float:
        """Observed gap relative to ``variation / max(a, c)``."""
        if self.bound > 0:
            return self.gap / self.bound
        return 0.0 if self.gap <= _ROUNDING_SLACK else math.inf

    @property
    def holds(self) -> bool:
        return self.gap <= self.bound + _ROUNDING_SLACK

    @property
    def holds_along_path(self) -> bool:
        return self.gap <= self.path_bound + _ROUNDING_SLACK


def lemma_sample(
    f: LaurentPoly, lattice: Sublattice, variation: float, nodes: int | None = None
) -> LemmaSample:
    """Compare ``m_finite(f, lattice)`` with the measure of ``line_for(lattice)``.

    ``bound`` is ``variation / max(a, c)``; ``path_bound`` scales it by
    `sampling_path_length`, the Riemann sum error bound that also covers
    sublattices with a long sampling curve.
    """
    bound = variation / max(lattice.a, lattice.c)
    return LemmaSample(
        lattice=lattice,
        finite=m_finite(f, lattice),
        line=m_line(f, line_for(lattice), nodes),
        bound=bound,
        path_bound=bound * sampling_path_length(lattice),
    )


@dataclass
class LemmaCheck:
    samples: list[LemmaSample]
    variation: float

    @property
    def worst_ratio(self) -> float:
        return max((s.ratio for s in self.samples), default=0.0)

    @property
    def violations(self) -> int:
        return sum(1 for s in self.samples if not s.holds)

    @property
    def path_violations(self) -> int:
        return sum(1 for s in self.samples if not s.holds_along_path)


def lemma_check(
    f: LaurentPoly,
    samples: int,
    max_index: int,
    seed: int = 0,
    *,
    nodes: int | None = None,
) -> LemmaCheck:
    """Run `lemma_sample` on random sublattices of index at most
    ``max_index``.

    Raises:
        NonExpansiveError: if f vanishes on the torus.
        ExpansivenessUndeterminedError: if expansiveness cannot be decided.
    """
    if samples < 1:
        raise ParameterRangeError("samples", samples, "a positive integer")
    if max_index < 1:
        raise ParameterRangeError("max_index", max_index, "a positive integer")

    certificate = require_expansive(f)
    assert certificate.min_modulus_lower_bound is not None

    alpha = variation_bound(f, certificate.min_modulus_lower_bound)
    rng = np.random.default_rng(seed)

    out: list[LemmaSample] = []
    for _ in range(samples):
        n = int(rng.integers(1, max_index + 1))
        candidates = enumerate_sublattices(n)
        lattice = candidates[int(rng.integers(len(candidates)))]
        out.append(lemma_sample(f, lattice, alpha, nodes))

    check = LemmaCheck(samples=out, variation=alpha)
    logger.debug(
        f"Finite vs line check for <{f}>: worst ratio {check.worst_ratio:.3g}, "
        f"{check.violations} violations ({check.path_violations} along the sampling path) "
        f"in {samples} samples"
    )
    return check


def shell_deviation(f: LaurentPoly, k: int, nodes: int | None = None, h: float | None = None) -> float:
    """Largest ``|m(K) - h|`` over primitive ``(p, q)`` with
    ``max(|p|, |q|) == k``."""
    if k < 1:
        raise ParameterRangeError("k", k, "a positive integer")

    if h is None:
        h = entropy(f, nodes)

    shell = [
        line
        for line in search_lines(k)
        if max(abs(line.p), line.q) == k and line.gamma == 1
    ]
    return max(abs(m_line(f, line, nodes) - h) for line in shell)
