import argparse
import logging

from src.exceptions import EXIT_FAILED, EXIT_OK
from src.models import MetricSpace, ProjectionPair
from src.repository.matrices import load_projection_file
from src.schemas import ProjectionsReport, RunConfig
from src.services import oblique, susy

logger = logging.getLogger(__name__)

COMMAND = "verify-projections"


def register(subparsers, parents) -> None:
    parser = subparsers.add_parser(
        COMMAND,
        parents=parents,
        help="Check pseudodeterminant and spectral duality for a pair of complementary projections",
    )
    parser.add_argument("file", help="JSON file with P0, P1, G and optionally H")
    parser.set_defaults(handler=handle, command=COMMAND)


def verify_projections(pair: ProjectionPair, space: MetricSpace, config: RunConfig) -> ProjectionsReport:
    """
    The verify_projections function runs the whole pipeline on a certified pair:
    natural basis, metric blocks, pseudodeterminant duality (with the full-space
    cross-check), the K/Σ forms, the bridge matrices and spectral duality. The
    supersymmetric pair built from D is reported alongside.

    :param pair: ProjectionPair: Certified pair
    :param space: MetricSpace: G and H
    :param config: RunConfig: Tolerances
    :return: ProjectionsReport
    """
    basis = oblique.natural_basis(pair, space)
    blocks = oblique.metric_blocks(basis, space)
    theorem1 = oblique.verify_theorem1(blocks, space, tol=config.match_tol, pair=pair)
    forms = oblique.k_sigma_forms(blocks)
    bridge = oblique.bridge_matrices(blocks, forms, rel_tol=config.zero_tol)
    theorem2 = oblique.verify_theorem2(forms, bridge, tol=config.match_tol, rel_tol=config.zero_tol)
    pair_susy = susy.build_susy(bridge, forms, strict=False)
    return ProjectionsReport(
        n=pair.dim,
        n0=pair.n0,
        n1=pair.n1,
        theorem1=theorem1,
        theorem2=theorem2,
        susy=susy.susy_report(pair_susy, bridge.r, rel_tol=config.zero_tol),
        passed=theorem1.passed and theorem2.passed,
    )


def handle(args: argparse.Namespace, config: RunConfig) -> tuple[ProjectionsReport, int]:
    pair, space = load_projection_file(args.file, zero_tol=config.zero_tol)
    report = verify_projections(pair, space, config)
    logger.info("%s %s: passed=%s", COMMAND, args.file, report.passed)
    return report, EXIT_OK if report.passed else EXIT_FAILED
