import logging
from pathlib import Path

import numpy as np
from pydantic import ValidationError

from src.exceptions import ParseError
from src.models import MetricSpace, ProjectionPair
from src.schemas import ProjectionFile
from src.services import oblique

logger = logging.getLogger(__name__)


def read_projection_file(path: str | Path) -> ProjectionFile:
    """
    The read_projection_file function parses a projection file ``{"P0", "P1", "G", "H"?}``
    with dense row-major matrices.

    :param path: str | Path: Location of the JSON file
    :return: The parsed ProjectionFile
    """
    try:
        return ProjectionFile.model_validate_json(Path(path).read_bytes())
    except OSError as err:
        raise ParseError(f"{path}: {err.strerror or err}")
    except ValidationError as err:
        raise ParseError(f"{path}: {err.error_count()} validation error(s): {err.errors()[0]['msg']}")


def load_projection_file(path: str | Path, zero_tol: float = 1e-10) -> tuple[ProjectionPair, MetricSpace]:
    """
    The load_projection_file function reads a projection file and certifies its content:
    the pair is validated and G, H are checked to be positive-definite.

    :param path: str | Path: Location of the JSON file
    :param zero_tol: float: Relative zero threshold of the rank computations
    :return: (ProjectionPair, MetricSpace)
    """
    data = read_projection_file(path)
    pair = oblique.validate_projection_pair(np.array(data.P0, dtype=float), np.array(data.P1, dtype=float), rel_tol=zero_tol)
    space = oblique.metric_space(data.G, data.H)
    if space.dim != pair.dim:
        raise ParseError(f"{path}: G is {space.dim}x{space.dim} but the projections are {pair.dim}x{pair.dim}")
    logger.debug("loaded %s: n=%d n0=%d n1=%d", path, pair.dim, pair.n0, pair.n1)
    return pair, space
