"""
Seeded random instances for the property suites. Every generator draws from the
``numpy.random.Generator`` it is handed and nothing else.
"""
import numpy as np

from src.models import CurrentSource, Netlist, VoltageSource, WeightedGraph
from src.services import graphcycles


def random_orthogonal(rng: np.random.Generator, n: int) -> np.ndarray:
    q, r = np.linalg.qr(rng.standard_normal((n, n)))
    return q * np.sign(np.diag(r))


def random_projection_pair(rng: np.random.Generator, n: int, n0: int | None = None) -> tuple[np.ndarray, np.ndarray]:
    """
    The random_projection_pair function draws ``P0 = S diag(I, 0) S⁻¹`` with
    ``S = Q1 diag(s) Q2``, singular values s in [0.5, 2], so the pair stays well conditioned.

    :param rng: Generator: Source of randomness
    :param n: int: Dimension, at least 2
    :param n0: int: Rank of P0; random in [1, n - 1] when omitted
    :return: (P0, P1)
    """
    if n0 is None:
        n0 = int(rng.integers(1, n))
    s = rng.uniform(0.5, 2.0, n)
    basis = random_orthogonal(rng, n) @ np.diag(s) @ random_orthogonal(rng, n)
    selector = np.diag([1.0] * n0 + [0.0] * (n - n0))
    p0 = basis @ selector @ np.linalg.inv(basis)
    return p0, np.eye(n) - p0


def random_orthogonal_pair(rng: np.random.Generator, n: int) -> tuple[np.ndarray, np.ndarray]:
    n0 = int(rng.integers(1, n))
    q = random_orthogonal(rng, n)[:, :n0]
    p0 = q @ q.T
    return p0, np.eye(n) - p0


def random_metric(rng: np.random.Generator, n: int) -> np.ndarray:
    m = rng.standard_normal((n, n))
    return m.T @ m + n * np.eye(n)


def random_scalar_product(rng: np.random.Generator, n: int) -> np.ndarray:
    m = rng.standard_normal((n, n))
    return m.T @ m / n + np.eye(n)


def log_uniform(rng: np.random.Generator, low: float, high: float, size: int) -> np.ndarray:
    return 10.0 ** rng.uniform(np.log10(low), np.log10(high), size)


def random_connected_graph(
    rng: np.random.Generator,
    max_vertices: int = 8,
    max_edges: int = 14,
    weight_range: tuple[float, float] = (1e-2, 1e2),
) -> WeightedGraph:
    """
    The random_connected_graph function grows a random tree on 2..max_vertices vertices,
    adds extra edges (parallel ones allowed, loops not), shuffles the edge order and
    orients every edge at random. Weights are log-uniform in ``weight_range``.

    :param rng: Generator: Source of randomness
    :param max_vertices: int: Largest vertex count
    :param max_edges: int: Largest edge count
    :param weight_range: Bounds of the weights
    :return: A connected WeightedGraph
    """
    vertices = int(rng.integers(2, max_vertices + 1))
    pairs = [(int(rng.integers(0, v)), v) for v in range(1, vertices)]
    total = int(rng.integers(vertices - 1, max(vertices - 1, max_edges) + 1))
    while len(pairs) < total:
        a, b = (int(x) for x in rng.choice(vertices, size=2, replace=False))
        pairs.append((a, b))
    order = rng.permutation(len(pairs))
    edges = []
    for k in order:
        a, b = pairs[k]
        edges.append((a, b) if rng.random() < 0.5 else (b, a))
    weights = log_uniform(rng, *weight_range, len(edges))
    return WeightedGraph(vertices, tuple(edges), tuple(float(w) for w in weights))


def random_netlist(rng: np.random.Generator, max_vertices: int = 6, max_edges: int = 10) -> Netlist:
    """
    The random_netlist function turns a random connected graph into a netlist: every chord
    of its depth-first tree gets a current source in series (through a fresh node), every
    tree edge a voltage source in parallel. Contracting the sources gives back the graph.

    :param rng: Generator: Source of randomness
    :param max_vertices: int: Largest vertex count of the effective graph
    :param max_edges: int: Largest resistor count
    :return: A Netlist
    """
    graph = random_connected_graph(rng, max_vertices, max_edges, weight_range=(1e-1, 1e1))
    tree = graphcycles.spanning_tree(graph)
    nodes = graph.vertex_count
    edges = list(graph.edges)
    current_sources = []
    for i, (origin, target) in enumerate(graph.edges):
        if i in tree.tree_edges:
            continue
        middle = nodes
        nodes += 1
        edges[i] = (origin, middle)
        current_sources.append(CurrentSource(middle, target, float(rng.uniform(-2.0, 2.0))))
    voltage_sources = [VoltageSource(i, float(rng.uniform(-5.0, 5.0))) for i in sorted(tree.tree_edges)]
    return Netlist(
        resistors=WeightedGraph(nodes, tuple(edges), graph.weights),
        current_sources=tuple(current_sources),
        voltage_sources=tuple(voltage_sources),
    )
