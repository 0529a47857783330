from __future__ import annotations

import argparse
import enum
import logging
import sys
from pathlib import Path
from typing import NoReturn, Sequence

from mpmath import mp
from rich.console import Console
from rich.logging import RichHandler
from rich.table import Table

from . import __version__, config
from .counting import CountCache, mertens
from .error import (
    ExpansivenessUndeterminedError,
    IntegrityError,
    NonExpansiveError,
    ParameterRangeError,
    PyOrbitsError,
)
from .file import read_polynomial_text
from .fullshift import MAX_DIMENSION, MIN_DIMENSION, fullshift_constant
from .measures import growth_rate
from .moebius import moebius_profile
from .poly import (
    ExpansivenessVerdict,
    LaurentPoly,
    PolynomialError,
    parse_poly,
    require_expansive,
)
from .report import AnalysisParameters, analyze, series_to_csv
from .verify import VerifyOptions, render_results, run_criteria

logger = logging.getLogger(__name__)

stderr = Console(stderr=True)


class ExitCode(enum.IntEnum):
    OK = 0
    PARSE_ERROR = 1
    NON_EXPANSIVE = 2
    UNDETERMINED = 3
    INTEGRITY = 4
    CHECKS_FAILED = 1


class _ArgumentParser(argparse.ArgumentParser):
    # Usage errors share the parse error code; 2 means non-expansive
    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(ExitCode.PARSE_ERROR, f"{self.prog}: error: {message}\n")


def _add_poly_arguments(parser: argparse.ArgumentParser) -> None:
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--poly", help='Laurent polynomial in x and y, e.g. "3+x+y"')
    source.add_argument("--poly-file", type=Path, help="file holding the polynomial")


def _add_numeric_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--quad-nodes", type=int, default=config.QUAD_NODES, help="trapezoid rule nodes"
    )
    parser.add_argument(
        "--search-bound",
        type=int,
        default=config.SEARCH_BOUND,
        help="box bound for line subgroup search",
    )
    parser.add_argument(
        "--exact-threshold",
        type=int,
        default=config.EXACT_THRESHOLD,
        help="largest index counted by determinant",
    )
    parser.add_argument(
        "--tie-tolerance",
        type=float,
        default=config.TIE_TOLERANCE,
        help="tolerance for witness ties",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog="pyorbits",
        description="Orbit counting for expansive ℤ²-actions given by Laurent polynomials",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")

    commands = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    analyze_cmd = commands.add_parser("analyze", help="expansiveness, entropy and growth rate")
    _add_poly_arguments(analyze_cmd)
    _add_numeric_arguments(analyze_cmd)
    analyze_cmd.add_argument("--format", choices=("json", "yaml"), default="json")
    analyze_cmd.set_defaults(handler=cmd_analyze)

    count_cmd = commands.add_parser("count", help="periodic point and orbit count series")
    _add_poly_arguments(count_cmd)
    _add_numeric_arguments(count_cmd)
    count_cmd.add_argument("--max-index", type=int, required=True, help="largest index N")
    count_cmd.add_argument("--g", type=float, help="growth rate override")
    count_cmd.add_argument(
        "--float",
        dest="float_only",
        action="store_true",
        help="accumulate in floating point only (no exact counts)",
    )
    count_cmd.add_argument("--format", choices=("csv", "json"), default="csv")
    count_cmd.set_defaults(handler=cmd_count)

    fullshift_cmd = commands.add_parser("fullshift", help="full-shift orbit sum constants")
    fullshift_cmd.add_argument("--d-max", type=int, default=8, help="largest dimension")
    fullshift_cmd.add_argument("--digits", type=int, default=13, help="significant digits")
    fullshift_cmd.add_argument(
        "--with-rank-one", action="store_true", help="include the ℤ-shift row"
    )
    fullshift_cmd.set_defaults(handler=cmd_fullshift)

    verify_cmd = commands.add_parser("verify-examples", help="check the worked examples")
    _add_numeric_arguments(verify_cmd)
    verify_cmd.add_argument("--only", help="comma separated check numbers")
    verify_cmd.add_argument("--seed", type=int, default=0, help="seed for random checks")
    verify_cmd.set_defaults(handler=cmd_verify_examples)

    profile_cmd = commands.add_parser("moebius-profile", help="largest |mu| per index")
    profile_cmd.add_argument("--max-index", type=int, required=True, help="largest index")
    profile_cmd.set_defaults(handler=cmd_moebius_profile)

    return parser


def _load_poly(args: argparse.Namespace) -> LaurentPoly:
    text = args.poly if args.poly is not None else read_polynomial_text(args.poly_file)
    return parse_poly(text)


def _parameters(args: argparse.Namespace) -> AnalysisParameters:
    return AnalysisParameters(
        quad_nodes=args.quad_nodes,
        search_bound=args.search_bound,
        exact_threshold=args.exact_threshold,
        tie_tolerance=args.tie_tolerance,
    )


def cmd_analyze(args: argparse.Namespace) -> int:
    f = _load_poly(args)
    report = analyze(f, _parameters(args))

    if args.format == "yaml":
        sys.stdout.write(report.to_yaml())
    else:
        sys.stdout.write(report.to_json(indent=True) + "\n")

    verdict = report.expansiveness.verdict
    if verdict is ExpansivenessVerdict.ZERO_FOUND:
        stderr.print(
            f"<{f}> vanishes on the torus near {report.expansiveness.zero_witness}", style="red"
        )
        return ExitCode.NON_EXPANSIVE
    if verdict is ExpansivenessVerdict.UNDETERMINED:
        stderr.print(f"Could not decide expansiveness of <{f}>", style="yellow")
        return ExitCode.UNDETERMINED

    return ExitCode.OK


def cmd_count(args: argparse.Namespace) -> int:
    if args.max_index < 1:
        raise ParameterRangeError("--max-index", args.max_index, "a positive integer")

    f = _load_poly(args)
    require_expansive(f)

    growth = growth_rate(
        f, args.search_bound, args.quad_nodes, tie_tolerance=args.tie_tolerance
    )
    g = args.g if args.g is not None else growth.g

    cache = CountCache(f, exact_threshold=args.exact_threshold)
    series = mertens(
        f, args.max_index, g, growth=growth, exact=not args.float_only, cache=cache
    )

    if args.format == "json":
        sys.stdout.write(series.to_json(indent=True) + "\n")
    else:
        sys.stdout.write(series_to_csv(series))

    return ExitCode.OK


def cmd_fullshift(args: argparse.Namespace) -> int:
    if not MIN_DIMENSION <= args.d_max <= MAX_DIMENSION:
        raise ParameterRangeError("--d-max", args.d_max, f"in [{MIN_DIMENSION}, {MAX_DIMENSION}]")

    table = Table(title="Leading term of M(N) for the full ℤ^d-shift")
    table.add_column("d", justify="right")
    table.add_column("M(N)")
    table.add_column("constant", justify="right")

    if args.with_rank_one:
        table.add_row("1", "log N + gamma", mp.nstr(mp.euler, args.digits))

    for d in range(MIN_DIMENSION, args.d_max + 1):
        constant = fullshift_constant(d)
        power = "N" if d == 2 else f"N^{d - 1}"
        table.add_row(
            str(d),
            f"{constant.closed_form}·{power}",
            mp.nstr(constant.evaluate(args.digits + 5), args.digits),
        )

    Console().print(table)
    return ExitCode.OK


def cmd_verify_examples(args: argparse.Namespace) -> int:
    only = [int(part) for part in args.only.split(",")] if args.only else None
    options = VerifyOptions(
        quad_nodes=args.quad_nodes,
        search_bound=args.search_bound,
        exact_threshold=args.exact_threshold,
        seed=args.seed,
    )

    results = run_criteria(options, only)
    render_results(results, Console())

    return ExitCode.OK if all(r.passed for r in results) else ExitCode.CHECKS_FAILED


def cmd_moebius_profile(args: argparse.Namespace) -> int:
    profile = moebius_profile(args.max_index)

    table = Table(title="Largest |mu(L', L)| by index of L")
    table.add_column("index", justify="right")
    table.add_column("max |mu|", justify="right")
    for n, value in profile.items():
        table.add_row(str(n), str(value))

    Console().print(table)
    return ExitCode.OK


def _setup_logging(verbose: bool) -> None:
    package_logger = logging.getLogger("pyorbits")
    package_logger.setLevel(logging.DEBUG if verbose else logging.WARNING)

    if not any(isinstance(h, RichHandler) for h in package_logger.handlers):
        package_logger.addHandler(RichHandler(console=stderr, show_path=verbose))


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _setup_logging(args.verbose)

    try:
        return int(args.handler(args))
    except PolynomialError as e:
        stderr.print(e.message, style="red", markup=False)
        return ExitCode.PARSE_ERROR
    except NonExpansiveError as e:
        stderr.print(e.message, style="red", markup=False)
        return ExitCode.NON_EXPANSIVE
    except ExpansivenessUndeterminedError as e:
        stderr.print(e.message, style="yellow", markup=False)
        return ExitCode.UNDETERMINED
    except IntegrityError as e:
        logger.exception("Internal consistency check failed")
        stderr.print(e.message, style="red", markup=False)
        return ExitCode.INTEGRITY
    except ParameterRangeError as e:
        stderr.print(e.message, style="red", markup=False)
        return ExitCode.PARSE_ERROR
    except PyOrbitsError as e:
        stderr.print(e.message, style="red", markup=False)
        return ExitCode.INTEGRITY
