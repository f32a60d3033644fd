"""
Command line module.

Entry point for the haarmoments command line tool. Every subcommand is
a thin wrapper over a library call; results go to the output stream as
text or JSON, diagnostics go to stderr through loguru.
"""

import argparse
import os
import sys
from typing import Any, Callable, Dict, List, Optional, TextIO

from loguru import logger

from haarmoments import settings
from haarmoments.characters.character_table import character_table
from haarmoments.combinatorics.partitions import Partition
from haarmoments.config import OUTPUT_FORMATS, current_config, load_config, use_config
from haarmoments.output.error_handler import (
    EXIT_SUCCESS, EXIT_VERIFY_FAILED, ArgumentError, handle_command_error
)
from haarmoments.output.output import (
    disp_str, format_float, format_gaussian, format_rational, format_table, send_output
)
from haarmoments.symfunc.symmetric_functions import kronecker, schur_eigen_poly, schur_poly
from haarmoments.tensorops.complex_matrix import unitarity_residual
from haarmoments.tensorops.quadrature import exact_grid_size, trace_power_integrand, weyl_quadrature
from haarmoments.tensorops.sampling import RngStream, haar_batch
from haarmoments.utils.text_utils import (
    load_matrix_file, parse_indices, parse_rational_list
)
from haarmoments.verify.registry import (
    VerifyParams, exact_vs_mc_report, load_identities, run_all, run_identity
)
from haarmoments.weingarten.exact_operator import ExactOperator
from haarmoments.weingarten.twirl import conditional_expectation, twirl_power
from haarmoments.weingarten.weingarten_fn import (
    monomial_integral, trace_power_moment, weingarten_fn
)

LOG_FORMAT = (
    "<bg 239><fg 15> {time:YYYY-MM-DD HH:mm:ss.SSS} </fg 15></bg 239>"
    "<bg 32><lvl><b> {level} </b></lvl></bg 32>"
    "<n> {message}</n>"
)

Command = Callable[[argparse.Namespace, TextIO], int]


def setup_logging(level: int) -> None:
    """
    Replaces loguru's sinks with the coloured stderr sink.

    :param level: Lowest level written
    """
    logger.remove()
    logger.level("DEBUG", color="<fg 251>")
    logger.add(sys.stderr, format=LOG_FORMAT, level=level)


class CommandParser(argparse.ArgumentParser):
    """Argument parser that raises usage errors instead of exiting."""

    def error(self, message: str):
        raise ArgumentError("usage", message)


def _option_or_positional(option: Any, positional: Any, name: str) -> Any:
    """Value of an argument that may be given as an option or positionally."""
    if option is not None and positional is not None and option != positional:
        raise ArgumentError("usage", f"{name} given twice with different values")
    value = option if option is not None else positional
    if value is None:
        raise ArgumentError("usage", f"{name} is required")
    return value


def _operator_rows(operator: ExactOperator) -> List[str]:
    rows = [[format_gaussian(value) for value in row] for row in operator.to_dense()]
    return [disp_str("matrix_row").format(row=line) for line in format_table(rows)]


"""''''''
Commands
''''''"""


def command_wg(args: argparse.Namespace, stream: TextIO) -> int:
    wg = weingarten_fn(args.k, args.d)
    lines = [disp_str("wg_header").format(k=args.k, d=args.d)] + [
        disp_str("wg_row").format(label=gamma.label(), value=format_rational(value))
        for gamma, value in wg.items()
    ]
    send_output(stream, wg, lines, current_config().output_format)
    return EXIT_SUCCESS


def command_moment(args: argparse.Namespace, stream: TextIO) -> int:
    value = monomial_integral(
        parse_indices(args.rows),
        parse_indices(args.cols),
        parse_indices(args.rows2),
        parse_indices(args.cols2),
        args.d
    )
    send_output(
        stream,
        value,
        [disp_str("moment_line").format(value=format_rational(value))],
        current_config().output_format
    )
    return EXIT_SUCCESS


def command_twirl(args: argparse.Namespace, stream: TextIO) -> int:
    """
    Twirls X^{⊗k} for a d × d file, or a whole operator on (C^d)^{⊗k}
    with --operator, where d is given by --dim.
    """
    operator = load_matrix_file(_option_or_positional(args.matrix, args.matrix_file, "--matrix"))
    output_format = current_config().output_format

    if args.operator:
        if args.dim is None:
            raise ArgumentError("usage", "--operator needs --dim")
        twirled = conditional_expectation(operator.as_tensor_power(args.dim))
        lines = [disp_str("twirl_operator_header").format(d=twirled.d, k=twirled.k)]
        send_output(stream, twirled, lines + _operator_rows(twirled), output_format)
        return EXIT_SUCCESS

    result = twirl_power(operator, args.k)
    lines = [disp_str("twirl_header").format(k=result.k, d=result.d)] + [
        disp_str("twirl_coefficient_row").format(label=lam.label(), value=format_gaussian(value))
        for lam, value in result.coefficients.items()
    ]
    if args.full:
        lines += _operator_rows(result.operator)
    send_output(stream, result, lines, output_format)
    return EXIT_SUCCESS


def command_chartable(args: argparse.Namespace, stream: TextIO) -> int:
    table = character_table(args.k)
    header = [disp_str("chartable_corner")] + [gamma.label() for gamma in table.partitions]
    rows = [
        [lam.label()] + [str(value) for value in row]
        for lam, row in zip(table.partitions, table.values)
    ]
    lines = [disp_str("chartable_header").format(k=args.k)] + format_table(rows, header)
    send_output(stream, table, lines, current_config().output_format)
    return EXIT_SUCCESS


def command_schur(args: argparse.Namespace, stream: TextIO) -> int:
    lam = Partition.from_text(args.partition)
    values = parse_rational_list(args.values)
    if args.traces:
        value = schur_eigen_poly(lam, list(values))
    else:
        value = schur_poly(lam, values)
    line = disp_str("schur_line").format(
        label=lam.label(), vector=args.values, value=format_rational(value)
    )
    send_output(stream, value, [line], current_config().output_format)
    return EXIT_SUCCESS


def command_kron(args: argparse.Namespace, stream: TextIO) -> int:
    first, second, third = (Partition.from_text(text) for text in (args.lam, args.mu, args.nu))
    value = kronecker(first, second, third)
    line = disp_str("kron_line").format(
        first=first.label(), second=second.label(), third=third.label(), value=value
    )
    send_output(stream, value, [line], current_config().output_format)
    return EXIT_SUCCESS


def command_sample(args: argparse.Namespace, stream: TextIO) -> int:
    config = current_config()
    seed = config.default_seed if args.seed is None else args.seed
    d = _option_or_positional(args.dim, args.dim_positional, "--dim")
    samples = haar_batch(d, args.count, RngStream(seed, args.stream).generator())

    payload = []
    lines = []
    for index, sample in enumerate(samples):
        residual = unitarity_residual(sample)
        payload.append({"matrix": sample, "residual": residual})
        lines.append(disp_str("sample_header").format(
            index=index, residual=format_float(residual, 3)
        ))
        rows = [[format_float(value, config.float_precision) for value in row] for row in sample]
        lines += [disp_str("matrix_row").format(row=line) for line in format_table(rows)]
    send_output(stream, payload, lines, config.output_format)
    return EXIT_SUCCESS


def command_quad(args: argparse.Namespace, stream: TextIO) -> int:
    config = current_config()
    grid = exact_grid_size(args.moment * args.power, args.n) if args.grid is None else args.grid
    value = weyl_quadrature(
        trace_power_integrand(args.moment, args.power),
        args.n,
        grid,
        phase_invariant=True
    )
    exact = trace_power_moment(args.moment, args.power, args.n)
    payload = {"n": args.n, "grid": grid, "value": value.real, "exact": format_rational(exact)}
    line = disp_str("quad_line").format(
        n=args.n, grid=grid, value=format_float(value, config.float_precision),
        exact=format_rational(exact)
    )
    send_output(stream, payload, [line], config.output_format)
    return EXIT_SUCCESS


def _verify_params(args: argparse.Namespace) -> VerifyParams:
    return VerifyParams(k=args.k, d=args.d, samples=args.samples, seed=args.seed)


def command_mcverify(args: argparse.Namespace, stream: TextIO) -> int:
    config = current_config()
    report = exact_vs_mc_report(args.identity, _verify_params(args))
    send_output(stream, report, [report.text_line(config.float_precision)], config.output_format)
    return EXIT_SUCCESS if report.passed else EXIT_VERIFY_FAILED


def command_verify(args: argparse.Namespace, stream: TextIO) -> int:
    params = _verify_params(args)
    if args.identity == "all":
        reports = run_all(params)
    else:
        reports = [run_identity(args.identity, params)]

    passed = sum(report.passed for report in reports)
    lines = [report.text_line() for report in reports]
    lines.append(disp_str("verify_summary").format(passed=passed, total=len(reports)))
    payload = {
        "identities": reports,
        "passed": passed,
        "total": len(reports),
    }
    send_output(stream, payload, lines, current_config().output_format)
    return EXIT_SUCCESS if passed == len(reports) else EXIT_VERIFY_FAILED


COMMANDS: Dict[str, Command] = {
    "wg": command_wg,
    "moment": command_moment,
    "twirl": command_twirl,
    "chartable": command_chartable,
    "schur": command_schur,
    "kron": command_kron,
    "sample": command_sample,
    "quad": command_quad,
    "mcverify": command_mcverify,
    "verify": command_verify,
}


"""''''''''''
Argument grammar
''''''''''"""


def _common_options() -> argparse.ArgumentParser:
    """Global flags, accepted before or after the subcommand."""
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--format", choices=OUTPUT_FORMATS, help="output format")
    common.add_argument("--config", metavar="FILE", help="YAML configuration file")
    common.add_argument("--cap", type=int, help="largest dense operator dimension")
    common.add_argument("--precision", type=int, help="digits of printed floats")
    common.add_argument("--log-level", type=int, help="loguru level number for stderr")
    return common


def _add_verify_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("-k", type=int, default=None, help="only check this degree")
    parser.add_argument("-d", type=int, default=None, help="only check this dimension")
    parser.add_argument("--samples", type=int, default=None, help="Monte Carlo samples")
    parser.add_argument("--seed", type=int, default=None, help="Monte Carlo seed")


def build_parser() -> CommandParser:
    """
    Builds the subcommand grammar.

    :return: Parser
    """
    common = _common_options()
    parser = CommandParser(
        prog="haarmoments",
        description="Exact Haar integrals over the unitary group.",
        parents=[common]
    )
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND")
    subparsers.required = True

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        return subparsers.add_parser(name, help=help_text, parents=[common])

    wg = add("wg", "Weingarten function on the conjugacy classes of S_k")
    wg.add_argument("k", type=int)
    wg.add_argument("d", type=int)

    moment = add("moment", "Haar integral of a monomial in U and conj(U)")
    moment.add_argument("--rows", required=True, help="row indices of U, e.g. 1,2")
    moment.add_argument("--cols", required=True, help="column indices of U")
    moment.add_argument("--rows2", required=True, help="row indices of conj(U)")
    moment.add_argument("--cols2", required=True, help="column indices of conj(U)")
    moment.add_argument("-d", type=int, required=True)

    twirl = add("twirl", "Twirl of X^(xk), or of an operator with --operator")
    twirl.add_argument("--matrix", metavar="FILE", default=None, help="JSON or YAML matrix file")
    twirl.add_argument("matrix_file", nargs="?", default=None, metavar="FILE", help="same as --matrix")
    twirl.add_argument("-k", type=int, default=2)
    twirl.add_argument("--operator", action="store_true", help="the file holds an operator on (C^d)^(xk)")
    twirl.add_argument("--dim", type=int, default=None, help="local dimension d for --operator")
    twirl.add_argument("--full", action="store_true", help="also print the twirled operator")

    chartable = add("chartable", "Character table of S_k")
    chartable.add_argument("k", type=int)

    schur = add("schur", "Schur polynomial at a rational point")
    schur.add_argument("partition", help="e.g. 2,1")
    schur.add_argument("values", help="comma separated rationals")
    schur.add_argument("--traces", action="store_true", help="values are Tr X^r for r = 1..k")

    kron = add("kron", "Kronecker coefficient g(lambda, mu, nu)")
    kron.add_argument("lam")
    kron.add_argument("mu")
    kron.add_argument("nu")

    sample = add("sample", "Haar random unitaries")
    sample.add_argument("-d", "--dim", dest="dim", type=int, default=None, help="dimension d")
    sample.add_argument("dim_positional", nargs="?", type=int, default=None, metavar="D", help="same as --dim")
    sample.add_argument("-n", "--count", dest="count", type=int, default=1, help="number of samples")
    sample.add_argument("--seed", type=int, default=None)
    sample.add_argument("--stream", type=int, default=0)

    quad = add("quad", "Weyl quadrature of |Tr U^K|^(2P) over U(n)")
    quad.add_argument("--moment", type=int, required=True, metavar="K")
    quad.add_argument("--power", type=int, default=1, metavar="P")
    quad.add_argument("-n", "--n", dest="n", type=int, required=True, help="size of the unitary group U(n)")
    quad.add_argument("--grid", type=int, default=None, help="grid points per axis")

    mcverify = add("mcverify", "Monte Carlo check of one identity")
    mcverify.add_argument("identity")
    _add_verify_options(mcverify)

    verify = add("verify", "Run one identity, or all of them")
    verify.add_argument("identity", help="identity name or 'all'")
    _add_verify_options(verify)

    return parser


def run(argv: Optional[List[str]] = None, stream: Optional[TextIO] = None, error_stream: Optional[TextIO] = None) -> int:
    """
    Runs the command line tool.

    :param argv: Arguments without the program name, sys.argv by default
    :param stream: Result stream, stdout by default
    :param error_stream: Diagnostic stream, stderr by default
    :return: 0 on success and passed verification, 1 on failed
        verification, 2 on usage errors
    """
    stream = sys.stdout if stream is None else stream
    error_stream = sys.stderr if error_stream is None else error_stream
    setup_logging(settings.console_log_level)

    previous = current_config()
    try:
        args = build_parser().parse_args(argv)
        config = load_config(
            getattr(args, "config", None),
            os.environ,
            {
                "output_format": getattr(args, "format", None),
                "dense_cap": getattr(args, "cap", None),
                "float_precision": getattr(args, "precision", None),
                "console_log_level": getattr(args, "log_level", None),
            }
        )
        use_config(config)
        setup_logging(config.console_log_level)
        if args.command in ("verify", "mcverify"):
            load_identities()

        logger.info("Running {}", args.command)
        return COMMANDS[args.command](args, stream)
    except SystemExit as e:
        # --help and --version
        return e.code if isinstance(e.code, int) else EXIT_SUCCESS
    except Exception as e:  # pylint: disable=broad-except
        return handle_command_error(e, error_stream)
    finally:
        use_config(previous)


def main() -> None:
    sys.exit(run())
