"""Numerical certificate that a polynomial has no zero on the torus.

The unit square is subdivided adaptively. A square of side ``h`` is excluded
once the smallest sampled modulus ``m`` satisfies
``m - lipschitz * h * sqrt(2) >= m / 2``; the left hand side is a rigorous
lower bound for ``|f|`` on the square. Squares that cannot be excluded are
searched with a damped Gauss-Newton iteration, and any point where ``|f|``
drops below the zero threshold is reported as a witness.
"""
from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass

import numpy as np

from .. import config
from ..error import (
    ExpansivenessUndeterminedError,
    NonExpansiveError,
    ParameterRangeError,
)
from ..serialize import DataClassSerializeMixin
from .laurent import LaurentPoly

logger = logging.getLogger(__name__)

_MAX_NEWTON_STARTS = 64
_NEWTON_STEPS = 50
_MAX_STEP = 0.25


@enum.unique
class ExpansivenessVerdict(str, enum.Enum):
    CERTIFIED_EXPANSIVE = "certified_expansive"
    ZERO_FOUND = "zero_found"
    UNDETERMINED = "undetermined"


@dataclass
class ExpansivenessCertificate(DataClassSerializeMixin):
    verdict: ExpansivenessVerdict
    min_modulus_lower_bound: float | None = None
    zero_witness: tuple[float, float] | None = None
    max_depth_reached: int = 0
    squares_examined: int = 0

    @property
    def is_expansive(self) -> bool:
        return self.verdict is ExpansivenessVerdict.CERTIFIED_EXPANSIVE


def _sample_offsets(h: float) -> tuple[np.ndarray, np.ndarray]:
    # Four corners and the center
    return (
        np.array([0.0, h, 0.0, h, h / 2]),
        np.array([0.0, 0.0, h, h, h / 2]),
    )


def _newton(f: LaurentPoly, s: float, t: float, zero_threshold: float) -> tuple[float, float] | None:
    a = f.exponents_a.astype(np.float64)
    b = f.exponents_b.astype(np.float64)

    for _ in range(_NEWTON_STEPS):
        terms = f.coeffs * np.exp(2j * np.pi * np.mod(a * s + b * t, 1.0))
        value = terms.sum()

        if abs(value) < zero_threshold:
            return s % 1.0, t % 1.0

        ds = (2j * np.pi * a * terms).sum()
        dt = (2j * np.pi * b * terms).sum()
        jacobian = np.array([[ds.real, dt.real], [ds.imag, dt.imag]])

        step = np.linalg.lstsq(jacobian, np.array([-value.real, -value.imag]), rcond=None)[0]
        size = float(np.hypot(step[0], step[1]))
        if not math.isfinite(size) or size < 1e-17:
            return None

        if size > _MAX_STEP:
            step *= _MAX_STEP / size

        s += float(step[0])
        t += float(step[1])

    return None


def _newton_witness(
    f: LaurentPoly, starts: list[tuple[float, float]], zero_threshold: float
) -> tuple[float, float] | None:
    found = [
        w for w in (_newton(f, s, t, zero_threshold) for s, t in starts[:_MAX_NEWTON_STARTS]) if w
    ]
    if not found:
        return None

    # Deterministic pick when several zeros are hit
    return min(found, key=lambda w: (round(w[0], 9), round(w[1], 9)))


def check_expansive(
    f: LaurentPoly,
    max_depth: int | None = None,
    *,
    zero_threshold: float | None = None,
) -> ExpansivenessCertificate:
    """Decide whether ``f`` is nonvanishing on the torus.

    Args:
        f: The polynomial.
        max_depth: Deepest subdivision level; defaults to ``config.MAX_DEPTH``.
        zero_threshold: Modulus below which a point counts as a zero.

    Returns:
        ExpansivenessCertificate: ``certified_expansive`` with a positive
            lower bound for ``|f|``, ``zero_found`` with a witness point, or
            ``undetermined`` when the depth ran out.
    """
    if max_depth is None:
        max_depth = config.MAX_DEPTH
    if zero_threshold is None:
        zero_threshold = config.ZERO_THRESHOLD

    if max_depth < 0:
        raise ParameterRangeError("max_depth", max_depth, "a non-negative integer")

    lipschitz = f.lipschitz_bound
    s0 = np.zeros(1)
    t0 = np.zeros(1)
    bound = math.inf
    examined = 0

    for depth in range(max_depth + 1):
        h = 0.5**depth
        off_s, off_t = _sample_offsets(h)
        ss = s0[:, None] + off_s[None, :]
        tt = t0[:, None] + off_t[None, :]

        moduli = np.abs(f.evaluate(ss, tt))
        smallest = moduli.min(axis=1)
        examined += len(s0)

        if float(smallest.min()) < zero_threshold:
            sq, sample = np.unravel_index(int(moduli.argmin()), moduli.shape)
            witness = (float(ss[sq, sample]) % 1.0, float(tt[sq, sample]) % 1.0)
            return _zero_found(f, witness, depth, examined)

        slack = lipschitz * h * math.sqrt(2)
        excluded = slack <= smallest / 2
        if excluded.any():
            bound = min(bound, float((smallest[excluded] - slack).min()))

        pending = ~excluded
        if not pending.any():
            if config.TRACE_LOGGING:
                logger.debug(f"<{f}> certified at depth {depth}: |f| >= {bound:.6g}")

            return ExpansivenessCertificate(
                verdict=ExpansivenessVerdict.CERTIFIED_EXPANSIVE,
                min_modulus_lower_bound=bound,
                max_depth_reached=depth,
                squares_examined=examined,
            )

        # Squares whose samples cannot rule out a zero get a Newton search
        suspicious = np.flatnonzero(pending & (smallest < slack))
        if len(suspicious):
            order = suspicious[np.argsort(smallest[suspicious], kind="stable")]
            best = moduli[order].argmin(axis=1)
            starts = [
                (float(ss[sq, k]), float(tt[sq, k])) for sq, k in zip(order, best, strict=True)
            ]
            witness = _newton_witness(f, starts, zero_threshold)
            if witness is not None:
                return _zero_found(f, witness, depth, examined)

        if depth == max_depth:
            break

        half = h / 2
        s0 = np.concatenate([s0[pending], s0[pending] + half, s0[pending], s0[pending] + half])
        t0 = np.concatenate([t0[pending], t0[pending], t0[pending] + half, t0[pending] + half])

    logger.debug(f"<{f}>: expansiveness undetermined at depth {max_depth}")
    return ExpansivenessCertificate(
        verdict=ExpansivenessVerdict.UNDETERMINED,
        max_depth_reached=max_depth,
        squares_examined=examined,
    )


def _zero_found(
    f: LaurentPoly, witness: tuple[float, float], depth: int, examined: int
) -> ExpansivenessCertificate:
    logger.debug(f"<{f}> vanishes near {witness}")
    return ExpansivenessCertificate(
        verdict=ExpansivenessVerdict.ZERO_FOUND,
        zero_witness=witness,
        max_depth_reached=depth,
        squares_examined=examined,
    )


def variation_bound(f: LaurentPoly, min_modulus: float) -> float:
    """Bound on the variation of ``log |f|`` along a unit-length segment,
    given a lower bound for ``|f|`` on the torus."""
    if not min_modulus > 0:
        raise ParameterRangeError("min_modulus", min_modulus, "a positive number")

    return f.lipschitz_bound / min_modulus * math.sqrt(2)


def require_expansive(
    f: LaurentPoly, certificate: ExpansivenessCertificate | None = None
) -> ExpansivenessCertificate:
    """Return a certificate for ``f``, raising unless it is certified expansive.

    Raises:
        NonExpansiveError: if a zero on the torus was found.
        ExpansivenessUndeterminedError: if subdivision ran out of depth.
    """
    if certificate is None:
        certificate = check_expansive(f)

    if certificate.verdict is ExpansivenessVerdict.ZERO_FOUND:
        assert certificate.zero_witness is not None
        raise NonExpansiveError(str(f), certificate.zero_witness)

    if certificate.verdict is ExpansivenessVerdict.UNDETERMINED:
        raise ExpansivenessUndeterminedError(str(f), certificate.max_depth_reached)

    return certificate
