"""Analysis reports and series output."""
from __future__ import annotations

import csv
import enum
import io
import logging
from dataclasses import dataclass, field

from mashumaro.exceptions import InvalidFieldValue

from . import __version__, config
from .counting import CountSeries
from .error import ReportFormatError
from .measures import GrowthReport, growth_rate
from .poly import ExpansivenessCertificate, LaurentPoly, check_expansive
from .serialize import DataClassSerializeMixin, unwrap_invalid_field_exception

logger = logging.getLogger(__name__)

CSV_HEADER = ("n", "a_n", "sum_F", "pi", "M", "M1", "M2", "N1", "N2", "N3", "N4")


@enum.unique
class ReportWarning(str, enum.Enum):
    UNCERTIFIED_GROWTH_RATE = "uncertified_growth_rate"


@dataclass
class AnalysisParameters(DataClassSerializeMixin):
    quad_nodes: int = field(default_factory=lambda: config.QUAD_NODES)
    search_bound: int = field(default_factory=lambda: config.SEARCH_BOUND)
    exact_threshold: int = field(default_factory=lambda: config.EXACT_THRESHOLD)
    tie_tolerance: float = field(default_factory=lambda: config.TIE_TOLERANCE)


@dataclass
class AnalysisReport(DataClassSerializeMixin):
    polynomial: str
    expansiveness: ExpansivenessCertificate
    growth: GrowthReport | None
    tool_version: str
    parameters: AnalysisParameters
    warnings: list[ReportWarning] = field(default_factory=list)

    @classmethod
    def load(cls, value: str | bytes) -> AnalysisReport:
        """Load a report written by `to_json`.

        Raises:
            ReportFormatError: if a field does not match the schema.
        """
        try:
            return cls.from_json(value)
        except InvalidFieldValue as e:
            path, cause = unwrap_invalid_field_exception(e)
            raise ReportFormatError(path, cause) from e


def analyze(f: LaurentPoly, parameters: AnalysisParameters | None = None) -> AnalysisReport:
    """Certify expansiveness of f and, when it holds, compute the growth rate.

    A non-expansive or undetermined polynomial gets a report without growth
    data.
    """
    if parameters is None:
        parameters = AnalysisParameters()

    certificate = check_expansive(f)
    growth: GrowthReport | None = None
    warnings: list[ReportWarning] = []

    if certificate.is_expansive:
        growth = growth_rate(
            f,
            parameters.search_bound,
            parameters.quad_nodes,
            tie_tolerance=parameters.tie_tolerance,
        )
        if not growth.certified:
            warnings.append(ReportWarning.UNCERTIFIED_GROWTH_RATE)

    return AnalysisReport(
        polynomial=str(f),
        expansiveness=certificate,
        growth=growth,
        tool_version=__version__,
        parameters=parameters,
        warnings=warnings,
    )


def format_real(value: float | None) -> str:
    """15 significant digits, always with a decimal point or exponent."""
    if value is None:
        return ""

    text = f"{value:.15g}"
    if text.lstrip("-").isdigit():
        text += ".0"
    return text


def format_integer(value: int | None) -> str:
    return "" if value is None else str(value)


def series_to_csv(series: CountSeries) -> str:
    """CSV rendering of a count series, one row per index."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_HEADER)

    for row in series.rows:
        writer.writerow(
            (
                row.n,
                row.a_n,
                format_integer(row.sum_f),
                format_integer(row.pi),
                format_real(row.mertens),
                format_real(row.m1),
                format_real(row.m2),
                format_real(row.n1),
                format_real(row.n2),
                format_real(row.n3),
                format_real(row.n4),
            )
        )

    return buffer.getvalue()
