import pytest

import main
from src.schemas import (
    CurrentSourceModel,
    GraphEdgeModel,
    GraphFile,
    NetlistFile,
    ProjectionFile,
    ResistorModel,
    VoltageSourceModel,
)
from src.services import fixtures


@pytest.fixture()
def projection_file(tmp_path):
    p0, p1, g = fixtures.projection_example()
    path = tmp_path / "projections.json"
    path.write_text(ProjectionFile(P0=p0.tolist(), P1=p1.tolist(), G=g.tolist()).model_dump_json())
    return path


@pytest.fixture()
def graph_file(tmp_path):
    def write(edges=fixtures.GRAPH_EDGES, vertices=fixtures.GRAPH_VERTICES, weights=None):
        weights = weights or [1.0] * len(edges)
        data = GraphFile(
            vertices=vertices,
            edges=[GraphEdgeModel(origin=o, target=t, weight=w) for (o, t), w in zip(edges, weights)],
        )
        path = tmp_path / "graph.json"
        path.write_text(data.model_dump_json(by_alias=True))
        return path

    return write


@pytest.fixture()
def netlist_file(tmp_path):
    def write(resistances=(1.0, 1.0, 1.0, 1.0, 1.0, 1.0), amps=(1.0, 0.0, 0.0), volts=(1.0, 0.0, 0.0), voltage=True):
        data = NetlistFile(
            vertices=fixtures.CIRCUIT_NODES,
            resistors=[ResistorModel(origin=o, target=t, ohms=r) for (o, t), r in zip(fixtures.CIRCUIT_RESISTORS, resistances)],
            current_sources=[
                CurrentSourceModel(origin=o, target=t, amps=a) for (o, t), a in zip(fixtures.CIRCUIT_CURRENT_SOURCES, amps)
            ],
            voltage_sources=[
                VoltageSourceModel(across_resistor=k, volts=v) for k, v in zip(fixtures.CIRCUIT_VOLTAGE_RESISTORS, volts)
            ]
            if voltage
            else [],
        )
        path = tmp_path / "netlist.json"
        path.write_text(data.model_dump_json(by_alias=True))
        return path

    return write


@pytest.fixture()
def cli(capsys):
    def invoke(*argv):
        code = main.run([str(a) for a in argv])
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    return invoke
