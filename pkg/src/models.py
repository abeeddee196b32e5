import enum
from dataclasses import dataclass, field

import numpy as np
from networkx.utils import UnionFind

from src.conf import messages
from src.exceptions import InvalidInput, SelfLoop


class HamiltonianBlock(enum.Enum):
    k0: str = "K0"
    k1: str = "K1"


class DriveMode(enum.Enum):
    current: str = "current"
    voltage: str = "voltage"


def frozen_array(values, dtype=float) -> np.ndarray:
    """
    The frozen_array function copies its input into a read-only numpy array.

    :param values: Anything numpy can turn into an array
    :param dtype: Element type of the copy
    :return: A read-only array
    """
    arr = np.array(values, dtype=dtype)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class SymMatrix:
    """
    Real symmetric matrix. The entries are symmetrized on construction, so
    ``entries[i, j] == entries[j, i]`` holds exactly.
    """
    entries: np.ndarray

    def __post_init__(self):
        a = np.array(self.entries, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
            raise InvalidInput(messages.NOT_SQUARE)
        if not np.all(np.isfinite(a)):
            raise InvalidInput(messages.NOT_FINITE)
        a = (a + a.T) / 2.0
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self.entries
        return self.entries.astype(dtype)


@dataclass(frozen=True)
class Spectrum:
    values: tuple[float, ...]
    zero_tol: float

    def __post_init__(self):
        if self.zero_tol <= 0:
            raise InvalidInput("zero_tol must be positive")
        object.__setattr__(self, "values", tuple(sorted((float(v) for v in self.values), reverse=True)))

    def __len__(self) -> int:
        return len(self.values)

    def nonzero(self) -> tuple[float, ...]:
        return tuple(v for v in self.values if abs(v) > self.zero_tol)

    def count_above(self, threshold: float, tol: float) -> int:
        return sum(1 for v in self.values if v > threshold + tol)

    def count_near(self, target: float, tol: float) -> int:
        return sum(1 for v in self.values if abs(v - target) <= tol)


@dataclass(frozen=True)
class CharPoly:
    """
    Monic characteristic polynomial, highest degree first:
    ``coefficients = (1, c_{n-1}, ..., c_0)``.
    """
    coefficients: tuple[float, ...]

    def __post_init__(self):
        if not self.coefficients or self.coefficients[0] != 1.0:
            raise InvalidInput("Characteristic polynomial must be monic")

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def roots(self) -> np.ndarray:
        return np.roots(np.array(self.coefficients, dtype=float))

    def __call__(self, x: float) -> float:
        return float(np.polyval(np.array(self.coefficients, dtype=float), x))


@dataclass(frozen=True, eq=False)
class MetricSpace:
    """
    Real space of dimension ``dim`` with scalar product ``H`` and metric ``G``,
    both positive-definite.
    """
    G: SymMatrix
    H: SymMatrix

    @property
    def dim(self) -> int:
        return self.G.dim

    @property
    def h_is_identity(self) -> bool:
        return bool(np.allclose(self.H.entries, np.eye(self.dim), rtol=0.0, atol=1e-12))


@dataclass(frozen=True, eq=False)
class ProjectionPair:
    P0: np.ndarray
    P1: np.ndarray
    n0: int
    n1: int

    @property
    def dim(self) -> int:
        return self.P0.shape[0]


@dataclass(frozen=True, eq=False)
class SubspaceBasis:
    """
    Basis adapted to the decomposition: the columns of ``V`` span the range of P0,
    the columns of ``W`` span the range of P1. ``Omega = Vᵀ H W``.
    """
    V: np.ndarray
    W: np.ndarray
    Omega: np.ndarray

    @property
    def n0(self) -> int:
        return self.V.shape[1]

    @property
    def n1(self) -> int:
        return self.W.shape[1]

    @property
    def stacked(self) -> np.ndarray:
        return np.hstack([self.V, self.W])


@dataclass(frozen=True, eq=False)
class NaturalBasis(SubspaceBasis):
    """H-orthonormal adapted basis."""


@dataclass(frozen=True, eq=False)
class MetricBlocks:
    L0: SymMatrix
    L1: SymMatrix
    V_off: np.ndarray
    Gamma0: SymMatrix
    Gamma1: SymMatrix
    Lambda_off: np.ndarray
    Omega: np.ndarray
    gram_h: np.ndarray
    identity_residual: float

    @property
    def n0(self) -> int:
        return self.L0.dim

    @property
    def n1(self) -> int:
        return self.L1.dim


@dataclass(frozen=True, eq=False)
class KSigmaForms:
    K0: SymMatrix
    K1: SymMatrix
    Sigma0: SymMatrix
    Sigma1: SymMatrix


@dataclass(frozen=True, eq=False)
class BridgeMatrices:
    """
    ``D`` is stored with cochord-like rows and chord-like columns (n1 × n0), so
    ``K0 = I + DᵀD`` and ``Sigma1 = I + DDᵀ``. ``B`` is n0 × n1 with
    ``K1 = I + BᵀB`` and ``Sigma0 = I + BBᵀ``.
    """
    B: np.ndarray
    D: np.ndarray
    r: int
    residuals: dict = field(default_factory=dict)


@dataclass(frozen=True, eq=False)
class WeightedGraph:
    vertex_count: int
    edges: tuple[tuple[int, int], ...]
    weights: tuple[float, ...]
    allow_loops: bool = False

    def __post_init__(self):
        if self.vertex_count < 1:
            raise InvalidInput(messages.BAD_VERTEX)
        edges = tuple((int(o), int(t)) for o, t in self.edges)
        weights = tuple(float(w) for w in self.weights)
        if len(edges) != len(weights):
            raise InvalidInput("Every edge needs exactly one weight")
        for o, t in edges:
            if not (0 <= o < self.vertex_count and 0 <= t < self.vertex_count):
                raise InvalidInput(messages.BAD_VERTEX)
            if o == t and not self.allow_loops:
                raise SelfLoop()
        if any(not np.isfinite(w) or w <= 0 for w in weights):
            raise InvalidInput(messages.BAD_WEIGHT)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "weights", weights)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def with_weights(self, weights) -> "WeightedGraph":
        return WeightedGraph(self.vertex_count, self.edges, tuple(weights), self.allow_loops)


@dataclass(frozen=True)
class SpanningTree:
    tree_edges: frozenset[int]

    @classmethod
    def from_edges(cls, graph: WeightedGraph, edges) -> "SpanningTree":
        """
        The from_edges function validates a user-chosen spanning tree of ``graph``.

        :param graph: WeightedGraph: Graph the tree must span
        :param edges: Edge indices of the tree
        :return: A SpanningTree
        """
        chosen = frozenset(int(i) for i in edges)
        if len(chosen) != graph.vertex_count - 1 or any(not 0 <= i < graph.edge_count for i in chosen):
            raise InvalidInput(messages.NOT_A_TREE)
        components = UnionFind(range(graph.vertex_count))
        for i in sorted(chosen):
            o, t = graph.edges[i]
            if components[o] == components[t]:
                raise InvalidInput(messages.NOT_A_TREE)
            components.union(o, t)
        return cls(chosen)


@dataclass(frozen=True, eq=False)
class CycleCocycleBasis:
    """
    Fundamental cycles (one per chord) and cocycles (one per cochord) of a graph
    with respect to a spanning tree. Vectors are integer rows indexed by edge.
    """
    graph: WeightedGraph
    tree: SpanningTree
    chords: tuple[int, ...]
    cochords: tuple[int, ...]
    cycle_vectors: np.ndarray
    cocycle_vectors: np.ndarray


@dataclass(frozen=True)
class CurrentSource:
    origin: int
    target: int
    amps: float


@dataclass(frozen=True)
class VoltageSource:
    resistor: int
    volts: float


@dataclass(frozen=True, eq=False)
class Netlist:
    """
    Resistors live on ``resistors`` (weights are ohms). Current sources are extra
    edges between nodes; voltage sources sit in parallel with a resistor.
    """
    resistors: WeightedGraph
    current_sources: tuple[CurrentSource, ...] = ()
    voltage_sources: tuple[VoltageSource, ...] = ()


@dataclass(frozen=True, eq=False)
class ReducedNetwork:
    """
    Effective resistor graph after contracting the current-source edges.

    ``vertex_map[x]`` is the effective vertex of original node ``x``.
    ``chord_drives`` maps a chord (resistor index) to the chord current a unit
    of the attached source pushes through it, as ``(source index, sign)``.
    """
    netlist: Netlist
    graph: WeightedGraph
    basis: CycleCocycleBasis
    vertex_map: tuple[int, ...]
    chord_drives: dict = field(default_factory=dict)
    tree_drives: dict = field(default_factory=dict)


@dataclass(frozen=True, eq=False)
class DriveVector:
    mode: DriveMode
    edges: tuple[int, ...]
    values: np.ndarray
    scaled: np.ndarray


@dataclass(frozen=True, eq=False)
class SusyPair:
    hamiltonian: SymMatrix
    supercharge: np.ndarray
    n0: int
    n1: int
    block: HamiltonianBlock = HamiltonianBlock.k0
    residuals: dict = field(default_factory=dict)
