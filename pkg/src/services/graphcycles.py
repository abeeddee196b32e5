import itertools
import logging
import math

import networkx as nx
import numpy as np
import scipy.linalg
from networkx.utils import UnionFind

from src.conf import messages
from src.conf.config import settings
from src.exceptions import Disconnected, InvalidInput, SelfLoop, TooLargeForOracle, WrongTopology
from src.models import CycleCocycleBasis, MetricSpace, ProjectionPair, SpanningTree, SubspaceBasis, SymMatrix, WeightedGraph, frozen_array
from src.schemas import TreePolynomialReport
from src.services import oblique

logger = logging.getLogger(__name__)

# the four-vertex, five-edge graph whose cocycles carry a unit eigenvector of Σ1
EXAMPLE_EDGES = ((0, 1), (2, 1), (3, 2), (1, 3), (2, 0))
EXAMPLE_COCHORDS = (0, 1, 2)


def incidence_matrix(g: WeightedGraph, allow_loops: bool | None = None) -> np.ndarray:
    """
    The incidence_matrix function returns δ with ``δ[target, i] = +1`` and ``δ[origin, i] = -1``.
    A loop has a zero column, and is only accepted when ``allow_loops`` is set.

    :param g: WeightedGraph: The graph
    :param allow_loops: bool: Defaults to the graph's own setting
    :return: Integer matrix of shape (vertex_count, edge_count)
    """
    allow = g.allow_loops if allow_loops is None else allow_loops
    delta = np.zeros((g.vertex_count, g.edge_count), dtype=np.int64)
    for i, (origin, target) in enumerate(g.edges):
        if origin == target:
            if not allow:
                raise SelfLoop()
            continue
        delta[target, i] = 1
        delta[origin, i] = -1
    return delta


def to_multigraph(g: WeightedGraph) -> nx.MultiGraph:
    graph = nx.MultiGraph()
    graph.add_nodes_from(range(g.vertex_count))
    for i, (origin, target) in enumerate(g.edges):
        graph.add_edge(origin, target, key=i, weight=g.weights[i])
    return graph


def is_connected(g: WeightedGraph) -> bool:
    return nx.is_connected(to_multigraph(g))


def spanning_tree(g: WeightedGraph) -> SpanningTree:
    """
    The spanning_tree function picks the depth-first search tree rooted at vertex 0,
    scanning the edges incident to each vertex in input order.

    :param g: WeightedGraph: Connected graph
    :return: SpanningTree
    """
    if not is_connected(g):
        raise Disconnected()
    adjacency = [[] for _ in range(g.vertex_count)]
    for i, (origin, target) in enumerate(g.edges):
        if origin == target:
            continue
        adjacency[origin].append((i, target))
        adjacency[target].append((i, origin))

    visited = {0}
    tree = []
    stack = [iter(adjacency[0])]
    while stack:
        for i, neighbour in stack[-1]:
            if neighbour not in visited:
                visited.add(neighbour)
                tree.append(i)
                stack.append(iter(adjacency[neighbour]))
                break
        else:
            stack.pop()
    logger.debug("dfs spanning tree: %s", tree)
    return SpanningTree(frozenset(tree))


def _tree_graph(g: WeightedGraph, tree: SpanningTree, skip: int | None = None) -> nx.Graph:
    graph = nx.Graph()
    graph.add_nodes_from(range(g.vertex_count))
    for i in tree.tree_edges:
        if i != skip:
            graph.add_edge(*g.edges[i], index=i)
    return graph


def cycle_cocycle_basis(g: WeightedGraph, tree: SpanningTree) -> CycleCocycleBasis:
    """
    The cycle_cocycle_basis function builds the fundamental cycles and cocycles of a spanning tree.

    Each chord closes a cycle: the chord itself with coefficient +1, followed by the
    tree path from its target back to its origin, +1 on edges traversed along their
    orientation and -1 against it. Each cochord cuts the tree in two; its cocycle
    is +1 on edges leaving the side that holds the cochord's origin and -1 on edges entering it.

    :param g: WeightedGraph: The graph
    :param tree: SpanningTree: Tree of the graph
    :return: CycleCocycleBasis
    """
    chords = tuple(i for i in range(g.edge_count) if i not in tree.tree_edges)
    cochords = tuple(sorted(tree.tree_edges))
    cycles = np.zeros((len(chords), g.edge_count), dtype=np.int64)
    cocycles = np.zeros((len(cochords), g.edge_count), dtype=np.int64)

    tree_graph = _tree_graph(g, tree)
    for row, alpha in enumerate(chords):
        origin, target = g.edges[alpha]
        cycles[row, alpha] = 1
        path = nx.shortest_path(tree_graph, target, origin)
        for u, v in zip(path, path[1:]):
            i = tree_graph[u][v]["index"]
            cycles[row, i] = 1 if g.edges[i][0] == u else -1

    for row, mu in enumerate(cochords):
        side = nx.node_connected_component(_tree_graph(g, tree, skip=mu), g.edges[mu][0])
        for i, (origin, target) in enumerate(g.edges):
            if origin in side and target not in side:
                cocycles[row, i] = 1
            elif target in side and origin not in side:
                cocycles[row, i] = -1

    delta = incidence_matrix(g, allow_loops=True)
    checks = (
        np.all(delta @ cycles.T == 0),
        np.all(cocycles @ cycles.T == 0),
        np.array_equal(cycles[:, list(chords)], np.eye(len(chords), dtype=np.int64)),
        np.array_equal(cocycles[:, list(cochords)], np.eye(len(cochords), dtype=np.int64)),
    )
    if not all(checks):
        raise InvalidInput("Cycle/cocycle pairing identities do not hold")
    logger.debug("basis: chords=%s cochords=%s", chords, cochords)
    return CycleCocycleBasis(
        graph=g,
        tree=tree,
        chords=chords,
        cochords=cochords,
        cycle_vectors=frozen_array(cycles, dtype=np.int64),
        cocycle_vectors=frozen_array(cocycles, dtype=np.int64),
    )


def graph_projections(basis: CycleCocycleBasis) -> ProjectionPair:
    """
    The graph_projections function returns ``P0 = Σ_α c_α ⊗ e_α`` (the cycle projection,
    columns at chords) and ``P1 = Σ_μ e_μ ⊗ c_μ`` (rows at cochords).

    :param basis: CycleCocycleBasis: Basis of the graph
    :return: Certified ProjectionPair; a graph without cycles is Trivial
    """
    size = basis.graph.edge_count
    p0 = np.zeros((size, size))
    p1 = np.zeros((size, size))
    for row, alpha in enumerate(basis.chords):
        p0[:, alpha] = basis.cycle_vectors[row]
    for row, mu in enumerate(basis.cochords):
        p1[mu, :] = basis.cocycle_vectors[row]
    return oblique.validate_projection_pair(p0, p1)


def graph_space(g: WeightedGraph) -> MetricSpace:
    return oblique.metric_space(np.diag(g.weights))


def graph_basis(basis: CycleCocycleBasis) -> SubspaceBasis:
    """
    The graph_basis function exports the cycle vectors and the cochord unit vectors as a
    basis adapted to the graph projections. Fed to metric_blocks it gives
    ``L0 = CᵀGC``, ``L1 = diag(g_μ)``, ``Γ0 = diag(1/g_α)`` and ``Γ1 = C_μ G⁻¹ C_μᵀ``.

    :param basis: CycleCocycleBasis: Basis of the graph
    :return: SubspaceBasis with identity scalar product
    """
    size = basis.graph.edge_count
    v = basis.cycle_vectors.T.astype(float)
    w = np.zeros((size, len(basis.cochords)))
    for row, mu in enumerate(basis.cochords):
        w[mu, row] = 1.0
    return SubspaceBasis(V=frozen_array(v), W=frozen_array(w), Omega=frozen_array(v.T @ w))


def enumerate_spanning_trees(g: WeightedGraph, max_edges: int | None = None) -> list[frozenset[int]]:
    """
    The enumerate_spanning_trees function lists every spanning tree by brute force over
    all (|X| - 1)-subsets of edges, rejecting those that close a cycle.

    :param g: WeightedGraph: The graph
    :param max_edges: int: Largest edge count accepted (settings.oracle_max_edges by default)
    :return: Spanning trees as sets of edge indices
    """
    limit = settings.oracle_max_edges if max_edges is None else max_edges
    if g.edge_count > limit:
        raise TooLargeForOracle(f"{messages.TOO_LARGE_FOR_ORACLE}: {g.edge_count} > {limit} edges")
    trees = []
    for subset in itertools.combinations(range(g.edge_count), g.vertex_count - 1):
        components = UnionFind(range(g.vertex_count))
        for i in subset:
            origin, target = g.edges[i]
            if components[origin] == components[target]:
                break
            components.union(origin, target)
        else:
            trees.append(frozenset(subset))
    return trees


def _det(a: np.ndarray) -> float:
    return 1.0 if a.size == 0 else float(scipy.linalg.det(a))


def tree_polynomials(g: WeightedGraph, basis: CycleCocycleBasis, max_edges: int | None = None, tol: float = 1e-9) -> TreePolynomialReport:
    """
    The tree_polynomials function evaluates the two spanning-tree polynomials as
    determinants of the cycle Gram matrix of G and the cocycle Gram matrix of G⁻¹,
    and compares them with explicit enumeration when the graph is small enough.

    :param g: WeightedGraph: The graph; its weights are the metric
    :param basis: CycleCocycleBasis: Basis of the graph
    :param max_edges: int: Enumeration cap
    :param tol: float: Relative tolerance
    :return: TreePolynomialReport
    """
    weights = np.array(g.weights)
    c = basis.cycle_vectors.astype(float)
    c_mu = basis.cocycle_vectors.astype(float)
    det_l0 = _det(c @ np.diag(weights) @ c.T)
    det_gamma1 = _det(c_mu @ np.diag(1.0 / weights) @ c_mu.T)
    det_g = math.prod(g.weights)
    ratio_ok = abs(det_l0 / det_gamma1 - det_g) <= tol * det_g

    tree_count = oracle_l0 = oracle_gamma1 = oracle_ok = None
    try:
        trees = enumerate_spanning_trees(g, max_edges)
    except TooLargeForOracle as err:
        logger.info("%s; enumeration skipped", err.detail)
    else:
        tree_count = len(trees)
        oracle_l0 = math.fsum(math.prod(g.weights[i] for i in range(g.edge_count) if i not in t) for t in trees)
        oracle_gamma1 = math.fsum(math.prod(1.0 / g.weights[i] for i in t) for t in trees)
        oracle_ok = abs(oracle_l0 - det_l0) <= tol * oracle_l0 and abs(oracle_gamma1 - det_gamma1) <= tol * oracle_gamma1
    return TreePolynomialReport(
        det_L0=det_l0,
        det_Gamma1=det_gamma1,
        det_G=det_g,
        tree_count=tree_count,
        oracle_L0=oracle_l0,
        oracle_Gamma1=oracle_gamma1,
        ratio_ok=ratio_ok,
        oracle_ok=oracle_ok,
        passed=ratio_ok and oracle_ok is not False,
    )


def d_matrix(basis: CycleCocycleBasis, weights=None) -> np.ndarray:
    """
    The d_matrix function returns ``D[μ, α] = √(g_μ / g_α) · c_μ[α]``, rows at cochords and
    columns at chords. The same matrix is ``-√(g_μ / g_α) · c_α[μ]``; the identity
    ``c_μ[α] = -c_α[μ]`` is checked exactly.

    :param basis: CycleCocycleBasis: Basis of the graph
    :param weights: Edge weights; the graph's own when omitted
    :return: Array of shape (|cochords|, |chords|)
    """
    g = np.array(basis.graph.weights if weights is None else weights, dtype=float)
    if g.shape != (basis.graph.edge_count,) or np.any(g <= 0):
        raise InvalidInput(messages.BAD_WEIGHT)
    chords, cochords = list(basis.chords), list(basis.cochords)
    c_mu_alpha = basis.cocycle_vectors[:, chords]
    c_alpha_mu = basis.cycle_vectors[:, cochords]
    if not np.array_equal(c_mu_alpha, -c_alpha_mu.T):
        raise InvalidInput("Cocycle and cycle coefficients are not opposite")
    scale = np.sqrt(np.outer(g[cochords], 1.0 / g[chords]))
    return scale * c_mu_alpha


def k0_from_d(d: np.ndarray) -> SymMatrix:
    d = np.asarray(d, dtype=float)
    return SymMatrix(np.eye(d.shape[1]) + d.T @ d)


def sigma1_from_d(d: np.ndarray) -> SymMatrix:
    d = np.asarray(d, dtype=float)
    return SymMatrix(np.eye(d.shape[0]) + d @ d.T)


def eigvec_unit_check(basis: CycleCocycleBasis, weights=None, vector=None) -> float:
    """
    The eigvec_unit_check function checks, on the four-vertex five-edge example graph,
    that ``(1/√g1, 1/√g2, -1/√g3)`` is an eigenvector of Σ1 with eigenvalue 1.

    :param basis: CycleCocycleBasis: Basis of the example graph
    :param weights: Edge weights; the graph's own when omitted
    :param vector: Alternative vector to test
    :return: Relative residual ‖Σ1 v - v‖ / ‖v‖
    """
    g = basis.graph
    if g.vertex_count != 4 or g.edges != EXAMPLE_EDGES or basis.cochords != EXAMPLE_COCHORDS:
        raise WrongTopology()
    w = np.array(g.weights if weights is None else weights, dtype=float)
    sigma1 = sigma1_from_d(d_matrix(basis, w)).entries
    v = np.array([1 / math.sqrt(w[0]), 1 / math.sqrt(w[1]), -1 / math.sqrt(w[2])]) if vector is None else np.asarray(vector, dtype=float)
    return float(np.linalg.norm(sigma1 @ v - v) / np.linalg.norm(v))
