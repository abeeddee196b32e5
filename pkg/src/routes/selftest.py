"""
Built-in reproduction and property suites. Every case draws from its own generator
seeded with ``[seed, suite number, case index]``, so a run is fully determined by
the seed and the case count.
"""
import argparse
import logging
from collections.abc import Callable

import numpy as np

from src.exceptions import EXIT_FAILED, EXIT_OK, ObliqueKitError
from src.models import DriveMode
from src.routes.graph import analyze_graph
from src.routes.projections import verify_projections
from src.schemas import RunConfig, SelftestCase, SelftestReport
from src.services import circuits, fixtures, graphcycles, numkit, oblique, sampling

logger = logging.getLogger(__name__)

COMMAND = "selftest"
FAULT_SIZE = 1e-3

Case = Callable[[np.random.Generator, int, RunConfig], "str | None"]


def register(subparsers, parents) -> None:
    parser = subparsers.add_parser(COMMAND, parents=parents, help="Run the built-in fixtures and seeded property suites")
    parser.add_argument("--seed", type=int, default=None, help="Seed of the property suites (OBLIQUE_KIT_SEED by default)")
    parser.add_argument("--cases", type=int, default=None, help="Random cases per suite")
    parser.add_argument("--inject-fault", action="store_true", help="Add a perturbed projection that must be rejected")
    parser.set_defaults(handler=handle, command=COMMAND)


def _close(a, b, tol: float) -> bool:
    a, b = np.asarray(a, dtype=float), np.asarray(b, dtype=float)
    if a.shape != b.shape:
        return False
    return bool(np.max(np.abs(a - b), initial=0.0) <= tol * max(1.0, float(np.max(np.abs(b), initial=0.0))))


def _verdict(failures: list[str]) -> str | None:
    return "; ".join(failures) if failures else None


def fixture_projections(rng, index, config):
    p0, p1, g = fixtures.projection_example()
    pair = oblique.validate_projection_pair(p0, p1, rel_tol=config.zero_tol)
    report = verify_projections(pair, oblique.metric_space(g), config)
    failures = []
    if not report.passed:
        failures.append("duality checks failed")
    t1 = report.theorem1
    if any(abs(x - fixtures.PROJECTION_DET_PLUS_G) > 1e-9 for x in (t1.lhs1, t1.lhs2, t1.rhs)):
        failures.append(f"ratios {t1.lhs1!r}, {t1.lhs2!r}, {t1.rhs!r} differ from 3")
    shared = report.theorem2.spectra["K0"]
    if not _close(shared, fixtures.PROJECTION_SHARED_EIGENVALUES, 0.01):
        failures.append(f"shared eigenvalues {shared}")
    return _verdict(failures)


def fixture_graph(rng, index, config):
    if index == 0:
        report = analyze_graph(fixtures.graph_example(), config)
        failures = []
        if not report.passed:
            failures.append("graph checks failed")
        if set(report.tree_edges) != fixtures.GRAPH_TREE:
            failures.append(f"tree {report.tree_edges}")
        if report.cycle_vectors != [list(c) for c in fixtures.GRAPH_CYCLES]:
            failures.append("cycle vectors")
        if report.cocycle_vectors != [list(c) for c in fixtures.GRAPH_COCYCLES]:
            failures.append("cocycle vectors")
        polynomials = report.tree_polynomials
        if abs(polynomials.det_L0 - 8.0) > 1e-9 or polynomials.tree_count != fixtures.GRAPH_TREE_COUNT:
            failures.append(f"det L0 {polynomials.det_L0!r} over {polynomials.tree_count} trees")
        spectra = report.theorem2.spectra if report.theorem2 else {}
        if not _close(spectra.get("K0", []), (4.0, 2.0), 1e-9) or not _close(spectra.get("Sigma1", []), (4.0, 2.0, 1.0), 1e-9):
            failures.append(f"spectra {spectra}")
        return _verdict(failures)

    weights = sampling.log_uniform(rng, 1e-1, 1e1, len(fixtures.GRAPH_EDGES))
    g = fixtures.graph_example(weights)
    basis = graphcycles.cycle_cocycle_basis(g, graphcycles.spanning_tree(g))
    failures = []
    residual = graphcycles.eigvec_unit_check(basis)
    if residual > 1e-9:
        failures.append(f"unit eigenvector residual {residual:.3e}")
    k0 = graphcycles.k0_from_d(graphcycles.d_matrix(basis)).entries
    if not _close(k0, fixtures.graph_k0_expected(weights), 1e-10):
        failures.append("K0 differs from its closed form")
    return _verdict(failures)


def fixture_circuit(rng, index, config):
    if index == 0:
        resistances = (1.0, 2.0, 3.0, 4.0, 5.0, 6.0)
    else:
        resistances = tuple(sampling.log_uniform(rng, 1e-1, 1e1, 6))
    amps = tuple(rng.uniform(-1.0, 1.0, 3))
    volts = tuple(rng.uniform(-1.0, 1.0, 3))
    reduced = circuits.reduce_netlist(fixtures.circuit_example(resistances, amps, volts))
    failures = []
    if reduced.vertex_map != fixtures.CIRCUIT_VERTEX_MAP:
        failures.append(f"vertex map {reduced.vertex_map}")
    if not _close(circuits.k0_power_form(reduced).entries, fixtures.circuit_k0_expected(resistances), 1e-10):
        failures.append("K0 differs from its closed form")
    if not _close(circuits.sigma1_power_form(reduced).entries, fixtures.circuit_sigma1_expected(resistances), 1e-10):
        failures.append("Sigma1 differs from its closed form")
    for mode, solve in ((DriveMode.current, circuits.solve_current_driven), (DriveMode.voltage, circuits.solve_voltage_driven)):
        _, power = solve(reduced, circuits.drive_vector(reduced, mode))
        if not power.passed:
            failures.append(f"{mode.value} power {power.power!r} vs {power.oracle_power!r}")
    if not circuits.self_duality_check(reduced).passed:
        failures.append("self-duality")
    return _verdict(failures)


def random_theorems(rng, index, config):
    n = int(rng.integers(2, 11))
    p0, p1 = sampling.random_projection_pair(rng, n)
    g = sampling.random_metric(rng, n)
    h = sampling.random_scalar_product(rng, n) if rng.random() < 0.5 else None
    pair = oblique.validate_projection_pair(p0, p1, rel_tol=config.zero_tol)
    report = verify_projections(pair, oblique.metric_space(g, h), config)
    failures = []
    if not report.theorem1.passed:
        failures.append(f"pseudodeterminant ratios {report.theorem1.lhs1!r}, {report.theorem1.lhs2!r} vs {report.theorem1.rhs!r}")
    if not report.theorem2.passed:
        failures.append("spectral duality")
    if not report.susy.passed:
        failures.append(f"supersymmetric pair {report.susy.residuals}")
    return _verdict(failures)


def random_graphs(rng, index, config):
    g = sampling.random_connected_graph(rng, max_vertices=8, max_edges=12)
    report = analyze_graph(g, config)
    failures = []
    if report.tree_polynomials.oracle_ok is not True or not report.tree_polynomials.ratio_ok:
        failures.append("tree polynomials")
    if not report.passed:
        failures.append("duality checks")
    return _verdict(failures)


def random_circuits(rng, index, config):
    reduced = circuits.reduce_netlist(sampling.random_netlist(rng))
    failures = []
    modes = [DriveMode.voltage]
    if reduced.basis.chords:
        modes.insert(0, DriveMode.current)
        k0 = numkit.spectrum_of(circuits.k0_power_form(reduced), config.zero_tol)
        s1 = numkit.spectrum_of(circuits.sigma1_power_form(reduced), config.zero_tol)
        if not numkit.spectra_match(k0, s1, {1.0}, config.match_tol).matched:
            failures.append("K0 and Sigma1 spectra")
    for mode in modes:
        solve = circuits.solve_current_driven if mode is DriveMode.current else circuits.solve_voltage_driven
        _, power = solve(reduced, circuits.drive_vector(reduced, mode))
        if not power.passed:
            failures.append(f"{mode.value} power {power.power!r} vs {power.oracle_power!r}")
    return _verdict(failures)


def singular_values(rng, index, config):
    n = int(rng.integers(2, 11))
    p0, p1 = sampling.random_projection_pair(rng, n)
    report = oblique.singular_value_duality(oblique.validate_projection_pair(p0, p1, rel_tol=config.zero_tol))
    return None if report.passed else f"norms {report.norm_p0!r} vs {report.norm_p1!r}"


def fault_injection(rng, index, config):
    p0, p1, g = fixtures.projection_example()
    p0[0, 0] += FAULT_SIZE
    pair = oblique.validate_projection_pair(p0, p1, rel_tol=config.zero_tol)
    return None if verify_projections(pair, oblique.metric_space(g), config).passed else "duality checks failed"


SUITES: dict[str, Case] = {
    "fixture-projections": fixture_projections,
    "fixture-graph": fixture_graph,
    "fixture-circuit": fixture_circuit,
    "random-theorems": random_theorems,
    "random-graphs": random_graphs,
    "random-circuits": random_circuits,
    "singular-values": singular_values,
    "fault-injection": fault_injection,
}


def case_count(suite: str, cases: int) -> int:
    if suite in ("fixture-projections", "fault-injection"):
        return 1
    if suite in ("fixture-graph", "fixture-circuit"):
        return cases + 1
    return cases


def run_case(suite: str, index: int, config: RunConfig) -> SelftestCase:
    """
    The run_case function runs one case of a suite with its own generator. A domain
    error or a linear-algebra failure marks the case as failed and records the error class.

    :param suite: str: Suite name
    :param index: int: Case index inside the suite
    :param config: RunConfig: Seed and tolerances
    :return: SelftestCase
    """
    rng = np.random.default_rng([config.seed, list(SUITES).index(suite), index])
    try:
        detail = SUITES[suite](rng, index, config)
    except ObliqueKitError as err:
        return SelftestCase(suite=suite, index=index, passed=False, error=type(err).__name__, detail=err.detail)
    except np.linalg.LinAlgError as err:
        return SelftestCase(suite=suite, index=index, passed=False, error=type(err).__name__, detail=str(err))
    return SelftestCase(suite=suite, index=index, passed=detail is None, detail=detail)


def run_selftest(config: RunConfig, inject_fault: bool = False) -> SelftestReport:
    suites = {}
    failures = []
    for suite in SUITES:
        if suite == "fault-injection" and not inject_fault:
            continue
        results = [run_case(suite, index, config) for index in range(case_count(suite, config.cases))]
        failed = [case for case in results if not case.passed]
        suites[suite] = {"cases": len(results), "passed": len(results) - len(failed), "failed": len(failed)}
        failures.extend(failed)
        logger.info("suite %s: %d/%d passed", suite, len(results) - len(failed), len(results))
    total = sum(s["cases"] for s in suites.values())
    return SelftestReport(
        seed=config.seed,
        cases_per_suite=config.cases,
        suites=suites,
        failures=failures,
        total=total,
        failed=len(failures),
        passed=not failures,
    )


def handle(args: argparse.Namespace, config: RunConfig) -> tuple[SelftestReport, int]:
    update = {}
    if args.seed is not None:
        update["seed"] = args.seed
    if args.cases is not None:
        update["cases"] = args.cases
    config = RunConfig.model_validate({**config.model_dump(), **update})
    report = run_selftest(config, inject_fault=args.inject_fault)
    return report, EXIT_OK if report.passed else EXIT_FAILED
