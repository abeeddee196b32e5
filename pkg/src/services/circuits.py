import itertools
import logging
import math

import numpy as np
from networkx.utils import UnionFind

from src.conf import messages
from src.exceptions import Disconnected, InconsistentDrive, InvalidInput, ShortCircuit, Trivial, WrongTopology
from src.models import (
    DriveMode,
    DriveVector,
    Netlist,
    ReducedNetwork,
    SpanningTree,
    SymMatrix,
    WeightedGraph,
    frozen_array,
)
from src.schemas import PowerReport, SelfDualityReport
from src.services import graphcycles, numkit

logger = logging.getLogger(__name__)

POWER_TOL = 1e-9
DUALITY_TOL = 1e-8

# chord -> cochords its fundamental cycle runs through, for the self-dual bridge network
BRIDGE_CYCLE_SUPPORT = {0: {3, 4}, 1: {3, 5}, 2: {4, 5}}
# R1 <-> 1/R6, R2 <-> 1/R5, R3 <-> 1/R4
DUALITY_PAIRS = ((0, 5), (1, 4), (2, 3))


def _degrees(n: Netlist) -> list[int]:
    degree = [0] * n.resistors.vertex_count
    for origin, target in n.resistors.edges:
        degree[origin] += 1
        degree[target] += 1
    for source in n.current_sources:
        degree[source.origin] += 1
        degree[source.target] += 1
    return degree


def _series_partner(n: Netlist, index: int, degree: list[int]) -> tuple[int, int]:
    # resistor sharing a degree-2 endpoint with the source, and the sign of the current it carries
    source = n.current_sources[index]
    for node in (source.origin, source.target):
        if degree[node] != 2:
            continue
        for k, (origin, target) in enumerate(n.resistors.edges):
            if node in (origin, target):
                a = 1 if source.origin == node else -1
                b = 1 if target == node else -1
                return k, a * b
    raise InvalidInput(f"{messages.SERIES_PARTNER_MISSING}: current source {index}")


def _check_tree(graph: WeightedGraph, edges) -> SpanningTree:
    components = UnionFind(range(graph.vertex_count))
    for i in sorted(edges):
        origin, target = graph.edges[i]
        if components[origin] == components[target]:
            raise ShortCircuit(f"{messages.SHORT_CIRCUIT}: generators close a loop through resistor {i}")
        components.union(origin, target)
    if len(edges) != graph.vertex_count - 1:
        raise Disconnected(f"{messages.DISCONNECTED}: generators do not span the network")
    return SpanningTree.from_edges(graph, edges)


def reduce_netlist(n: Netlist) -> ReducedNetwork:
    """
    The reduce_netlist function contracts every current-source edge and returns the
    effective resistor graph with its cycle/cocycle basis.

    Effective vertices are the contracted node groups numbered by their smallest
    original node. The spanning tree is the set of resistors carrying a voltage source;
    without voltage sources it is the complement of the resistors driven by current
    sources, and without any source the depth-first tree.

    :param n: Netlist: The network
    :return: ReducedNetwork
    """
    nodes = n.resistors.vertex_count
    groups = UnionFind(range(nodes))
    for k, source in enumerate(n.current_sources):
        if not (0 <= source.origin < nodes and 0 <= source.target < nodes):
            raise InvalidInput(messages.BAD_VERTEX)
        if groups[source.origin] == groups[source.target]:
            raise ShortCircuit(f"{messages.SHORT_CIRCUIT}: current source {k} closes a loop of sources")
        groups.union(source.origin, source.target)

    leaders = sorted({groups[x] for x in range(nodes)}, key=lambda leader: min(y for y in range(nodes) if groups[y] == leader))
    label = {leader: i for i, leader in enumerate(leaders)}
    vertex_map = tuple(label[groups[x]] for x in range(nodes))
    edges = tuple((vertex_map[o], vertex_map[t]) for o, t in n.resistors.edges)
    graph = WeightedGraph(len(leaders), edges, n.resistors.weights, allow_loops=any(o == t for o, t in edges))
    if not graphcycles.is_connected(graph):
        raise Disconnected()

    degree = _degrees(n)
    chord_drives = {}
    for k in range(len(n.current_sources)):
        resistor, sign = _series_partner(n, k, degree)
        if resistor in chord_drives:
            raise ShortCircuit(f"{messages.SHORT_CIRCUIT}: resistor {resistor} is driven by two current sources")
        chord_drives[resistor] = (k, sign)

    tree_drives = {}
    for k, source in enumerate(n.voltage_sources):
        if not 0 <= source.resistor < graph.edge_count:
            raise InvalidInput(messages.BAD_VERTEX)
        if source.resistor in tree_drives:
            raise ShortCircuit(f"{messages.SHORT_CIRCUIT}: two voltage sources across resistor {source.resistor}")
        tree_drives[source.resistor] = k

    if tree_drives:
        tree = _check_tree(graph, set(tree_drives))
        if chord_drives and set(chord_drives) != set(range(graph.edge_count)) - set(tree_drives):
            cotree = sorted(set(range(graph.edge_count)) - set(tree_drives))
            raise InconsistentDrive(f"{messages.INCONSISTENT_DRIVE}: cotree {cotree}, current-driven {sorted(chord_drives)}")
    elif chord_drives:
        tree = _check_tree(graph, set(range(graph.edge_count)) - set(chord_drives))
    else:
        tree = graphcycles.spanning_tree(graph)

    basis = graphcycles.cycle_cocycle_basis(graph, tree)
    logger.debug("reduced netlist: %d nodes -> %d vertices, tree %s", nodes, graph.vertex_count, basis.cochords)
    return ReducedNetwork(
        netlist=n,
        graph=graph,
        basis=basis,
        vertex_map=vertex_map,
        chord_drives=chord_drives,
        tree_drives=tree_drives,
    )


def _reduced(network) -> ReducedNetwork:
    return network if isinstance(network, ReducedNetwork) else reduce_netlist(network)


def k0_power_form(network) -> SymMatrix:
    """
    The k0_power_form function returns ``K0 = I + DᵀD`` over the chords of the reduced network,
    the quadratic form of the dissipated power in scaled chord currents.

    :param network: Netlist or ReducedNetwork
    :return: SymMatrix of size |chords|
    """
    reduced = _reduced(network)
    if not reduced.basis.chords:
        raise Trivial(f"{messages.TRIVIAL_PAIR}: the network has no meshes")
    return graphcycles.k0_from_d(graphcycles.d_matrix(reduced.basis))


def sigma1_power_form(network) -> SymMatrix:
    """
    The sigma1_power_form function returns ``Σ1 = I + DDᵀ`` over the tree resistors,
    the quadratic form of the dissipated power in scaled tree voltages.

    :param network: Netlist or ReducedNetwork
    :return: SymMatrix of size |cochords|
    """
    reduced = _reduced(network)
    if not reduced.basis.cochords:
        raise Trivial(f"{messages.TRIVIAL_PAIR}: the network has a single node")
    return graphcycles.sigma1_from_d(graphcycles.d_matrix(reduced.basis))


def drive_vector(network, mode: DriveMode, overrides: dict[int, float] | None = None) -> DriveVector:
    """
    The drive_vector function collects the drive of the reduced network: chord currents
    for current drive (from the series current sources), tree voltages for voltage drive
    (from the parallel voltage sources). ``overrides`` maps resistor indices to values.

    Scaling: ``j = √R · I`` for currents, ``j = V / √R`` for voltages.

    :param network: Netlist or ReducedNetwork
    :param mode: DriveMode: current or voltage
    :param overrides: Values replacing those of the sources
    :return: DriveVector
    """
    reduced = _reduced(network)
    n = reduced.netlist
    weights = np.array(reduced.graph.weights)
    if mode is DriveMode.current:
        if not reduced.chord_drives:
            raise InvalidInput(f"{messages.NO_GENERATORS}: {mode.value}")
        edges = reduced.basis.chords
        values = {}
        for resistor, (k, sign) in reduced.chord_drives.items():
            values[resistor] = n.current_sources[k].amps * sign
    else:
        if not reduced.tree_drives:
            raise InvalidInput(f"{messages.NO_GENERATORS}: {mode.value}")
        edges = reduced.basis.cochords
        values = {resistor: n.voltage_sources[k].volts for resistor, k in reduced.tree_drives.items()}
    for resistor, value in (overrides or {}).items():
        if resistor not in values:
            raise InvalidInput(f"{messages.BAD_DRIVE}: resistor {resistor}")
        values[resistor] = float(value)

    v = np.array([values[i] for i in edges], dtype=float)
    r = weights[list(edges)]
    scaled = v * np.sqrt(r) if mode is DriveMode.current else v / np.sqrt(r)
    return DriveVector(mode=mode, edges=tuple(edges), values=frozen_array(v), scaled=frozen_array(scaled))


def _mna_current(reduced: ReducedNetwork, drive: DriveVector) -> np.ndarray:
    # nodal analysis on the original nodes: resistors as conductances, sources as injections
    n = reduced.netlist
    nodes = n.resistors.vertex_count
    laplacian = np.zeros((nodes, nodes))
    for (o, t), ohms in zip(n.resistors.edges, n.resistors.weights):
        c = 1.0 / ohms
        laplacian[o, o] += c
        laplacian[t, t] += c
        laplacian[o, t] -= c
        laplacian[t, o] -= c
    injection = np.zeros(nodes)
    chord_current = dict(zip(drive.edges, drive.values))
    for resistor, (k, sign) in reduced.chord_drives.items():
        source = n.current_sources[k]
        amps = chord_current[resistor] * sign
        injection[source.target] += amps
        injection[source.origin] -= amps
    potentials = np.linalg.lstsq(laplacian, injection, rcond=None)[0]
    return np.array([(potentials[o] - potentials[t]) / r for (o, t), r in zip(n.resistors.edges, n.resistors.weights)])


def _mna_voltage(reduced: ReducedNetwork, drive: DriveVector) -> np.ndarray:
    # modified nodal analysis: voltage sources across tree resistors, current-source edges shorted
    n = reduced.netlist
    nodes = n.resistors.vertex_count
    constraints = [(n.resistors.edges[resistor], value) for resistor, value in zip(drive.edges, drive.values)]
    constraints += [((s.origin, s.target), 0.0) for s in n.current_sources]
    size = nodes + len(constraints)
    system = np.zeros((size, size))
    rhs = np.zeros(size)
    for (o, t), ohms in zip(n.resistors.edges, n.resistors.weights):
        c = 1.0 / ohms
        system[o, o] += c
        system[t, t] += c
        system[o, t] -= c
        system[t, o] -= c
    for row, ((o, t), volts) in enumerate(constraints, start=nodes):
        system[row, o], system[row, t] = 1.0, -1.0
        system[o, row], system[t, row] = 1.0, -1.0
        rhs[row] = volts
    solution = np.linalg.lstsq(system, rhs, rcond=None)[0]
    potentials = solution[:nodes]
    return np.array([potentials[o] - potentials[t] for o, t in n.resistors.edges])


def _agree(a: float, b: float) -> bool:
    return abs(a - b) <= POWER_TOL * max(1.0, abs(a), abs(b))


def solve_current_driven(network, drive: DriveVector) -> tuple[np.ndarray, PowerReport]:
    """
    The solve_current_driven function superposes the fundamental cycles weighted by the
    chord currents. The dissipated power is evaluated three ways: as ``jᵀ K0 j``, as the
    edge sum ``Σ R I²``, and by nodal analysis of the original netlist.

    :param network: Netlist or ReducedNetwork
    :param drive: DriveVector: Current drive
    :return: Edge currents (resistor order) and the PowerReport
    """
    reduced = _reduced(network)
    if drive.mode is not DriveMode.current:
        raise InvalidInput(f"{messages.NO_GENERATORS}: current")
    basis = reduced.basis
    delta = graphcycles.incidence_matrix(reduced.graph, allow_loops=True)
    if np.any(delta @ basis.cycle_vectors.T != 0):
        raise InvalidInput("Cycle vectors violate current conservation")
    currents = drive.values @ basis.cycle_vectors
    weights = np.array(reduced.graph.weights)
    j = drive.scaled
    power = float(j @ k0_power_form(reduced).entries @ j)
    edge_sum = float(np.sum(weights * currents**2))
    oracle_currents = _mna_current(reduced, drive)
    oracle = float(np.sum(weights * oracle_currents**2))
    passed = _agree(power, edge_sum) and _agree(power, oracle)
    return currents, PowerReport(
        mode=DriveMode.current,
        drive_edges=list(drive.edges),
        drive_values=[float(x) for x in drive.values],
        scaled_drive=[float(x) for x in drive.scaled],
        edge_values=[float(x) for x in currents],
        power=power,
        form_used="K0",
        oracle_power=oracle,
        edge_sum_power=edge_sum,
        passed=passed,
    )


def solve_voltage_driven(network, drive: DriveVector) -> tuple[np.ndarray, PowerReport]:
    """
    The solve_voltage_driven function superposes the fundamental cocycles weighted by the
    tree voltages. The dissipated power is ``jᵀ Σ1 j``, checked against ``Σ V² / R``
    and against modified nodal analysis of the original netlist.

    :param network: Netlist or ReducedNetwork
    :param drive: DriveVector: Voltage drive
    :return: Edge voltage drops (resistor order) and the PowerReport
    """
    reduced = _reduced(network)
    if drive.mode is not DriveMode.voltage:
        raise InvalidInput(f"{messages.NO_GENERATORS}: voltage")
    basis = reduced.basis
    if np.any(basis.cycle_vectors @ basis.cocycle_vectors.T != 0):
        raise InvalidInput("Cocycle vectors violate the loop law")
    voltages = drive.values @ basis.cocycle_vectors
    weights = np.array(reduced.graph.weights)
    j = drive.scaled
    power = float(j @ sigma1_power_form(reduced).entries @ j)
    edge_sum = float(np.sum(voltages**2 / weights))
    oracle_voltages = _mna_voltage(reduced, drive)
    oracle = float(np.sum(oracle_voltages**2 / weights))
    passed = _agree(power, edge_sum) and _agree(power, oracle)
    return voltages, PowerReport(
        mode=DriveMode.voltage,
        drive_edges=list(drive.edges),
        drive_values=[float(x) for x in drive.values],
        scaled_drive=[float(x) for x in drive.scaled],
        edge_values=[float(x) for x in voltages],
        power=power,
        form_used="Sigma1",
        oracle_power=oracle,
        edge_sum_power=edge_sum,
        passed=passed,
    )


def dual_resistances(weights) -> tuple[float, ...]:
    r = list(weights)
    dual = [0.0] * 6
    for a, b in DUALITY_PAIRS:
        dual[a], dual[b] = 1.0 / r[b], 1.0 / r[a]
    return tuple(dual)


def _best_signed_permutation(a: np.ndarray, b: np.ndarray) -> tuple[float, tuple[int, ...], tuple[int, ...]]:
    size = a.shape[0]
    best = (math.inf, tuple(range(size)), (1,) * size)
    for perm in itertools.permutations(range(size)):
        moved = b[np.ix_(perm, perm)]
        for signs in itertools.product((1, -1), repeat=size):
            s = np.array(signs)
            residual = float(np.max(np.abs(a - np.outer(s, s) * moved)))
            if residual < best[0]:
                best = (residual, perm, signs)
    return best


def self_duality_check(network) -> SelfDualityReport:
    """
    The self_duality_check function applies the substitution R1 ↔ 1/R6, R2 ↔ 1/R5,
    R3 ↔ 1/R4 to the six-resistor bridge network and checks that K0 and Σ1 trade places:
    equal spectra up to the eigenvalue 1, and equal entries up to a signed relabelling
    found by exhaustive matching.

    :param network: Netlist or ReducedNetwork with the bridge topology
    :return: SelfDualityReport
    """
    reduced = _reduced(network)
    basis = reduced.basis
    if (
        reduced.graph.vertex_count != 4
        or reduced.graph.edge_count != 6
        or basis.chords != (0, 1, 2)
        or basis.cochords != (3, 4, 5)
    ):
        raise WrongTopology()
    for row, alpha in enumerate(basis.chords):
        support = {mu for mu in basis.cochords if basis.cycle_vectors[row, mu] != 0}
        if support != BRIDGE_CYCLE_SUPPORT[alpha]:
            raise WrongTopology()

    weights = reduced.graph.weights
    dual = dual_resistances(weights)
    k0, s1 = graphcycles.k0_from_d(graphcycles.d_matrix(basis, weights)), graphcycles.sigma1_from_d(graphcycles.d_matrix(basis, weights))
    k0_dual = graphcycles.k0_from_d(graphcycles.d_matrix(basis, dual))
    s1_dual = graphcycles.sigma1_from_d(graphcycles.d_matrix(basis, dual))

    spectra_matched = all(
        numkit.spectra_match(numkit.spectrum_of(a), numkit.spectrum_of(b), {1.0}, DUALITY_TOL).matched
        for a, b in ((k0_dual, s1), (s1_dual, k0))
    )
    residual, perm, signs = _best_signed_permutation(k0_dual.entries, s1.entries)
    reverse_residual = _best_signed_permutation(s1_dual.entries, k0.entries)[0]
    scale = max(1.0, float(np.max(np.abs(s1.entries))), float(np.max(np.abs(k0.entries))))
    entrywise = max(residual, reverse_residual) / scale
    logger.debug("self-duality: permutation %s signs %s residual %.3e", perm, signs, entrywise)
    return SelfDualityReport(
        spectra_matched=spectra_matched,
        entrywise_residual=entrywise,
        permutation=list(perm),
        signs=list(signs),
        passed=spectra_matched and entrywise <= DUALITY_TOL,
    )
