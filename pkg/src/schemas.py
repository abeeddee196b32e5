from typing import Any, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

from src.models import DriveMode, HamiltonianBlock

SCHEMA_VERSION = "oblique-kit/1"

Matrix = list[list[float]]


# Input files

class ProjectionFile(BaseModel):
    P0: Matrix
    P1: Matrix
    G: Matrix
    H: Optional[Matrix] = None


class GraphEdgeModel(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    origin: int = Field(alias="from", ge=0)
    target: int = Field(alias="to", ge=0)
    weight: float = 1.0


class GraphFile(BaseModel):
    vertices: int = Field(ge=1)
    edges: list[GraphEdgeModel] = []


class ResistorModel(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    origin: int = Field(alias="from", ge=0)
    target: int = Field(alias="to", ge=0)
    ohms: float


class CurrentSourceModel(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    origin: int = Field(alias="from", ge=0)
    target: int = Field(alias="to", ge=0)
    amps: float = 0.0


class VoltageSourceModel(BaseModel):
    across_resistor: int = Field(ge=0)
    volts: float = 0.0


class NetlistFile(BaseModel):
    vertices: int = Field(ge=1)
    resistors: list[ResistorModel]
    current_sources: list[CurrentSourceModel] = []
    voltage_sources: list[VoltageSourceModel] = []


# Run configuration

class RunConfig(BaseModel):
    zero_tol: float = Field(default=1e-10, gt=0)
    match_tol: float = Field(default=1e-8, gt=0)
    tree_strategy: Literal["dfs"] = "dfs"
    output_format: Literal["text", "json"] = "text"
    seed: int = 42
    cases: int = Field(default=20, ge=0)
    oracle_max_edges: int = Field(default=20, ge=0)


# Reports

class SpectrumMatch(BaseModel):
    matched: bool
    left: list[float]
    right: list[float]
    unmatched_left: list[float] = []
    unmatched_right: list[float] = []
    max_diff: float = 0.0


class Theorem1Report(BaseModel):
    lhs1: float
    lhs2: float
    rhs: float
    det_plus: dict[str, float]
    passed: bool
    oracle: Optional[dict[str, float]] = None
    oracle_passed: Optional[bool] = None


class Multiplicity(BaseModel):
    above_one: int
    one: int
    zero: int


class Theorem2Report(BaseModel):
    spectra: dict[str, list[float]]
    matches: dict[str, bool]
    matched: bool
    min_nonzero: float
    r: int
    multiplicities: dict[str, Multiplicity]
    expected_multiplicities: dict[str, Multiplicity]
    multiplicity_ok: bool
    bridge_residuals: dict[str, float]
    bridge_ok: bool
    passed: bool


class SingularValueReport(BaseModel):
    singular_values_p0: list[float]
    singular_values_p1: list[float]
    norm_p0: float
    norm_p1: float
    matched: bool
    passed: bool


class TreePolynomialReport(BaseModel):
    det_L0: float
    det_Gamma1: float
    det_G: float
    tree_count: Optional[int] = None
    oracle_L0: Optional[float] = None
    oracle_Gamma1: Optional[float] = None
    ratio_ok: bool
    oracle_ok: Optional[bool] = None
    passed: bool


class PowerReport(BaseModel):
    mode: DriveMode
    drive_edges: list[int]
    drive_values: list[float]
    scaled_drive: list[float]
    edge_values: list[float]
    power: float
    form_used: Literal["K0", "Sigma1"]
    oracle_power: float
    edge_sum_power: float
    passed: bool


class SelfDualityReport(BaseModel):
    spectra_matched: bool
    entrywise_residual: float
    permutation: list[int]
    signs: list[int]
    passed: bool


class SusyReport(BaseModel):
    block: HamiltonianBlock
    residuals: dict[str, float]
    algebra_ok: bool
    hamiltonian_spectrum: list[float]
    ground_state_dim: int
    expected_ground_state_dim: int
    passed: bool


class ProjectionsReport(BaseModel):
    n: int
    n0: int
    n1: int
    theorem1: Theorem1Report
    theorem2: Theorem2Report
    susy: Optional[SusyReport] = None
    passed: bool


class GraphReport(BaseModel):
    vertices: int
    edges: int
    tree_edges: list[int]
    chords: list[int]
    cochords: list[int]
    cycle_vectors: list[list[int]]
    cocycle_vectors: list[list[int]]
    tree_polynomials: TreePolynomialReport
    theorem1: Optional[Theorem1Report] = None
    theorem2: Optional[Theorem2Report] = None
    note: Optional[str] = None
    passed: bool


class CircuitReport(BaseModel):
    vertex_map: list[int]
    chords: list[int]
    cochords: list[int]
    K0: Optional[Matrix] = None
    Sigma1: Optional[Matrix] = None
    spectrum_K0: list[float] = []
    spectrum_Sigma1: list[float] = []
    spectra_matched: bool
    power: Optional[PowerReport] = None
    self_duality: Optional[SelfDualityReport] = None
    passed: bool


class SelftestCase(BaseModel):
    suite: str
    index: int
    passed: bool
    error: Optional[str] = None
    detail: Optional[str] = None


class SelftestReport(BaseModel):
    seed: int
    cases_per_suite: int
    suites: dict[str, dict[str, int]]
    failures: list[SelftestCase]
    total: int
    failed: int
    passed: bool


class ErrorReport(BaseModel):
    error: str
    detail: str
    exit_code: int


class Envelope(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    schema_: str = Field(default=SCHEMA_VERSION, alias="schema")
    command: str
    exit_code: int
    result: dict[str, Any]
