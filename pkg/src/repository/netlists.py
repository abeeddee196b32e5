from pathlib import Path

from pydantic import ValidationError

from src.conf import messages
from src.exceptions import InvalidInput, ParseError
from src.models import CurrentSource, Netlist, VoltageSource, WeightedGraph
from src.schemas import NetlistFile


def netlist_from_file(data: NetlistFile) -> Netlist:
    """
    The netlist_from_file function turns a parsed netlist into domain objects.
    Resistor order fixes the resistor indices; ``across_resistor`` refers to it.

    :param data: NetlistFile: Parsed file
    :return: A Netlist
    """
    if not data.resistors:
        raise InvalidInput(messages.NO_EDGES)
    for source in data.voltage_sources:
        if source.across_resistor >= len(data.resistors):
            raise InvalidInput(f"{messages.BAD_VERTEX}: no resistor {source.across_resistor}")
    return Netlist(
        resistors=WeightedGraph(
            vertex_count=data.vertices,
            edges=tuple((r.origin, r.target) for r in data.resistors),
            weights=tuple(r.ohms for r in data.resistors),
        ),
        current_sources=tuple(CurrentSource(s.origin, s.target, s.amps) for s in data.current_sources),
        voltage_sources=tuple(VoltageSource(s.across_resistor, s.volts) for s in data.voltage_sources),
    )


def load_netlist(path: str | Path) -> Netlist:
    try:
        data = NetlistFile.model_validate_json(Path(path).read_bytes())
    except OSError as err:
        raise ParseError(f"{path}: {err.strerror or err}")
    except ValidationError as err:
        raise ParseError(f"{path}: {err.error_count()} validation error(s): {err.errors()[0]['msg']}")
    return netlist_from_file(data)
