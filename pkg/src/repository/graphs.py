from pathlib import Path

from pydantic import ValidationError

from src.conf import messages
from src.exceptions import InvalidInput, ParseError
from src.models import WeightedGraph
from src.schemas import GraphFile


def graph_from_file(data: GraphFile) -> WeightedGraph:
    if not data.edges:
        raise InvalidInput(messages.NO_EDGES)
    return WeightedGraph(
        vertex_count=data.vertices,
        edges=tuple((e.origin, e.target) for e in data.edges),
        weights=tuple(e.weight for e in data.edges),
    )


def load_graph(path: str | Path) -> WeightedGraph:
    """
    The load_graph function reads ``{"vertices": n, "edges": [{"from", "to", "weight"}]}``.
    Edge order is significant: it fixes the edge indices used in every report.

    :param path: str | Path: Location of the JSON file
    :return: A WeightedGraph
    """
    try:
        data = GraphFile.model_validate_json(Path(path).read_bytes())
    except OSError as err:
        raise ParseError(f"{path}: {err.strerror or err}")
    except ValidationError as err:
        raise ParseError(f"{path}: {err.error_count()} validation error(s): {err.errors()[0]['msg']}")
    return graph_from_file(data)
