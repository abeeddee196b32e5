"""
Built-in worked examples: a 4×4 oblique projection pair, the four-vertex five-edge
graph, and the six-resistor bridge network with its generators.
"""
import numpy as np

from src.models import CurrentSource, Netlist, VoltageSource, WeightedGraph
from src.services.graphcycles import EXAMPLE_COCHORDS, EXAMPLE_EDGES

PROJECTION_P0 = ((1, 1, 0, 0), (0, 0, 0, 0), (0, 1, 0, 1), (0, 1, 0, 1))
PROJECTION_P1 = ((0, -1, 0, 0), (0, 1, 0, 0), (0, -1, 1, -1), (0, -1, 0, 0))
PROJECTION_G = ((1, 0, 0, 0), (0, 2, 1, 0), (0, 1, 2, 0), (0, 0, 0, 1))
PROJECTION_DET_PLUS_G = 3.0
PROJECTION_SHARED_EIGENVALUES = (5.36, 1.31)

# vertices A, B, C, D = 0, 1, 2, 3; edges e1..e5
GRAPH_VERTICES = 4
GRAPH_EDGES = EXAMPLE_EDGES
GRAPH_TREE = frozenset(EXAMPLE_COCHORDS)
GRAPH_CYCLES = ((0, 1, 1, 1, 0), (1, -1, 0, 0, 1))
GRAPH_COCYCLES = ((1, 0, 0, 0, -1), (0, 1, 0, -1, 1), (0, 0, 1, -1, 0))
GRAPH_TREE_COUNT = 8

# original nodes: 0 top-middle, 1 left, 2 middle, 3 right, 4 top-left, 5 top-right, 6 bottom-middle
CIRCUIT_NODES = 7
CIRCUIT_RESISTORS = ((1, 4), (5, 3), (1, 6), (0, 2), (1, 2), (2, 3))
CIRCUIT_CURRENT_SOURCES = ((0, 4), (5, 0), (6, 3))
CIRCUIT_VOLTAGE_RESISTORS = (3, 4, 5)
CIRCUIT_VERTEX_MAP = (0, 1, 2, 3, 0, 0, 3)


def projection_example() -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    return np.array(PROJECTION_P0, dtype=float), np.array(PROJECTION_P1, dtype=float), np.array(PROJECTION_G, dtype=float)


def graph_example(weights=(1.0, 1.0, 1.0, 1.0, 1.0)) -> WeightedGraph:
    return WeightedGraph(GRAPH_VERTICES, GRAPH_EDGES, tuple(weights))


def circuit_example(resistances=(1.0, 2.0, 3.0, 4.0, 5.0, 6.0), amps=(1.0, 0.0, 0.0), volts=(1.0, 0.0, 0.0)) -> Netlist:
    return Netlist(
        resistors=WeightedGraph(CIRCUIT_NODES, CIRCUIT_RESISTORS, tuple(resistances)),
        current_sources=tuple(CurrentSource(o, t, a) for (o, t), a in zip(CIRCUIT_CURRENT_SOURCES, amps)),
        voltage_sources=tuple(VoltageSource(k, v) for k, v in zip(CIRCUIT_VOLTAGE_RESISTORS, volts)),
    )


def circuit_k0_expected(r) -> np.ndarray:
    """Closed-form K0 of the bridge network in terms of R1..R6."""
    r1, r2, r3, r4, r5, r6 = r
    return np.array(
        [
            [1 + (r4 + r5) / r1, -r4 / np.sqrt(r1 * r2), r5 / np.sqrt(r1 * r3)],
            [-r4 / np.sqrt(r1 * r2), 1 + (r4 + r6) / r2, r6 / np.sqrt(r2 * r3)],
            [r5 / np.sqrt(r1 * r3), r6 / np.sqrt(r2 * r3), 1 + (r5 + r6) / r3],
        ]
    )


def circuit_sigma1_expected(r) -> np.ndarray:
    """Closed-form Σ1 of the bridge network in terms of R1..R6."""
    r1, r2, r3, r4, r5, r6 = r
    return np.array(
        [
            [1 + r4 / r1 + r4 / r2, -np.sqrt(r4 * r5) / r1, np.sqrt(r4 * r6) / r2],
            [-np.sqrt(r4 * r5) / r1, 1 + r5 / r1 + r5 / r3, np.sqrt(r5 * r6) / r3],
            [np.sqrt(r4 * r6) / r2, np.sqrt(r5 * r6) / r3, 1 + r6 / r2 + r6 / r3],
        ]
    )


def graph_k0_expected(g) -> np.ndarray:
    """Closed-form K0 of the example graph in terms of g1..g5."""
    g1, g2, g3, g4, g5 = g
    return np.array(
        [
            [1 + (g2 + g3) / g4, -g2 / np.sqrt(g4 * g5)],
            [-g2 / np.sqrt(g4 * g5), 1 + (g1 + g2) / g5],
        ]
    )
