import argparse
import logging
import sys

from pydantic import ValidationError

from src.conf.config import settings
from src.exceptions import InvalidInput, ObliqueKitError
from src.routes import circuit, graph, projections, selftest
from src.schemas import ErrorReport, RunConfig
from src.services.reporting import render

logger = logging.getLogger("oblique_kit")


def build_parser() -> argparse.ArgumentParser:
    """
    The build_parser function assembles the command line from the command modules.
    Global flags are accepted before or after the command name; a flag left out
    falls back to the settings.

    :return: The argument parser
    """
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=argparse.SUPPRESS, help="Matching tolerance of the duality checks")
    common.add_argument("--zero-tol", type=float, default=argparse.SUPPRESS, help="Relative zero-eigenvalue threshold")
    common.add_argument("--format", choices=["text", "json"], default=argparse.SUPPRESS, help="Report format (json writes floats with 17 significant digits)")
    common.add_argument(
        "--log-level",
        type=str.upper,
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        default=argparse.SUPPRESS,
        help="Logging level on stderr",
    )

    parser = argparse.ArgumentParser(
        prog="oblique-kit",
        description="Complementary oblique projections, spanning-tree polynomials and resistor networks",
        parents=[common],
    )
    subparsers = parser.add_subparsers(dest="group", required=True)
    for module in (projections, graph, circuit, selftest):
        module.register(subparsers, [common])
    return parser


def run_config(args: argparse.Namespace) -> RunConfig:
    """
    The run_config function merges the settings with the command-line flags.

    :param args: Namespace: Parsed arguments
    :return: A validated RunConfig
    """
    try:
        return RunConfig(
            zero_tol=getattr(args, "zero_tol", settings.zero_tol),
            match_tol=getattr(args, "tol", settings.match_tol),
            output_format=getattr(args, "format", settings.output_format),
            seed=settings.seed,
            cases=settings.selftest_cases,
            oracle_max_edges=settings.oracle_max_edges,
        )
    except ValidationError as err:
        raise InvalidInput(f"Invalid run configuration: {err.errors()[0]['msg']}")


def run(argv: list[str] | None = None) -> int:
    """
    The run function parses ``argv``, runs the command and writes its report once.
    Reports go to stdout; in text mode an error report goes to stderr instead.

    :param argv: list[str]: Arguments without the program name
    :return: The exit code
    """
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        stream=sys.stderr,
        level=getattr(args, "log_level", settings.log_level).upper(),
        format="%(levelname)s %(name)s: %(message)s",
        force=True,
    )
    output_format = getattr(args, "format", settings.output_format)
    try:
        config = run_config(args)
        try:
            report, exit_code = args.handler(args, config)
        except ValidationError as err:
            raise InvalidInput(f"Invalid run configuration: {err.errors()[0]['msg']}")
    except ObliqueKitError as err:
        logger.debug("%s failed: %s", args.command, err.detail)
        report = ErrorReport(error=type(err).__name__, detail=err.detail, exit_code=err.exit_code)
        stream = sys.stdout if output_format == "json" else sys.stderr
        stream.write(render(args.command, err.exit_code, report, output_format))
        return err.exit_code
    sys.stdout.write(render(args.command, exit_code, report, output_format))
    return exit_code


def cli() -> None:
    sys.exit(run())


if __name__ == "__main__":
    cli()
