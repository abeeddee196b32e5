import argparse

from src.exceptions import EXIT_FAILED, EXIT_OK
from src.models import WeightedGraph
from src.repository.graphs import load_graph
from src.schemas import GraphReport, RunConfig
from src.services import graphcycles, oblique

COMMAND = "graph analyze"
NO_CYCLES = "no cycles: the graph is a tree, the duality checks are vacuous"


def register(subparsers, parents) -> None:
    graph = subparsers.add_parser("graph", help="Weighted graph commands")
    actions = graph.add_subparsers(dest="action", required=True)
    analyze = actions.add_parser(
        "analyze",
        parents=parents,
        help="Spanning tree, cycle/cocycle bases, tree polynomials and duality checks of a graph",
    )
    analyze.add_argument("file", help="JSON file with vertices and edges")
    analyze.set_defaults(handler=handle, command=COMMAND)


def analyze_graph(g: WeightedGraph, config: RunConfig) -> GraphReport:
    """
    The analyze_graph function takes the depth-first tree of ``g``, builds the fundamental
    cycles and cocycles, evaluates both spanning-tree polynomials (against enumeration when
    the graph is small enough) and, when the graph has cycles, runs both duality checks on
    the graph projections with metric ``diag(weights)``.

    :param g: WeightedGraph: Connected graph
    :param config: RunConfig: Tolerances and enumeration cap
    :return: GraphReport
    """
    tree = graphcycles.spanning_tree(g)
    basis = graphcycles.cycle_cocycle_basis(g, tree)
    polynomials = graphcycles.tree_polynomials(g, basis, max_edges=config.oracle_max_edges)

    theorem1 = theorem2 = None
    note = None
    if basis.chords:
        pair = graphcycles.graph_projections(basis)
        space = graphcycles.graph_space(g)
        blocks = oblique.metric_blocks(graphcycles.graph_basis(basis), space)
        theorem1 = oblique.verify_theorem1(blocks, space, tol=config.match_tol, pair=pair)
        forms = oblique.k_sigma_forms(blocks)
        bridge = oblique.bridge_matrices(blocks, forms, rel_tol=config.zero_tol)
        theorem2 = oblique.verify_theorem2(forms, bridge, tol=config.match_tol, rel_tol=config.zero_tol)
    else:
        note = NO_CYCLES

    passed = polynomials.passed and all(t.passed for t in (theorem1, theorem2) if t is not None)
    return GraphReport(
        vertices=g.vertex_count,
        edges=g.edge_count,
        tree_edges=sorted(tree.tree_edges),
        chords=list(basis.chords),
        cochords=list(basis.cochords),
        cycle_vectors=basis.cycle_vectors.tolist(),
        cocycle_vectors=basis.cocycle_vectors.tolist(),
        tree_polynomials=polynomials,
        theorem1=theorem1,
        theorem2=theorem2,
        note=note,
        passed=passed,
    )


def handle(args: argparse.Namespace, config: RunConfig) -> tuple[GraphReport, int]:
    report = analyze_graph(load_graph(args.file), config)
    return report, EXIT_OK if report.passed else EXIT_FAILED
