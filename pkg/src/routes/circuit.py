import argparse
import logging

from src.conf import messages
from src.exceptions import EXIT_FAILED, EXIT_OK, InvalidInput, Trivial, WrongTopology
from src.models import DriveMode, Netlist
from src.repository.netlists import load_netlist
from src.schemas import CircuitReport, RunConfig
from src.services import circuits, numkit

logger = logging.getLogger(__name__)

COMMAND = "circuit analyze"


def register(subparsers, parents) -> None:
    circuit = subparsers.add_parser("circuit", help="Resistor network commands")
    actions = circuit.add_subparsers(dest="action", required=True)
    analyze = actions.add_parser(
        "analyze",
        parents=parents,
        help="Power forms, spectra, Kirchhoff solve and self-duality of a resistor network",
    )
    analyze.add_argument("file", help="JSON netlist")
    analyze.add_argument(
        "--drive",
        action="append",
        default=[],
        metavar="K=V",
        help="Override the generator attached to resistor K with value V (repeatable)",
    )
    analyze.add_argument("--mode", choices=[m.value for m in DriveMode], default=None, help="Drive mode")
    analyze.set_defaults(handler=handle, command=COMMAND)


def parse_drives(items: list[str]) -> dict[int, float]:
    """
    The parse_drives function turns ``["0=1.5", "2=-1"]`` into ``{0: 1.5, 2: -1.0}``.

    :param items: list[str]: ``K=V`` strings
    :return: Overrides keyed by resistor index
    """
    drives = {}
    for item in items:
        key, sep, value = item.partition("=")
        try:
            if not sep:
                raise ValueError(item)
            drives[int(key)] = float(value)
        except ValueError:
            raise InvalidInput(f"{messages.BAD_DRIVE}: {item!r}")
    return drives


def analyze_circuit(n: Netlist, config: RunConfig, mode: DriveMode | None = None, drives: dict[int, float] | None = None) -> CircuitReport:
    """
    The analyze_circuit function reduces the netlist, builds both power forms, compares
    their spectra up to the eigenvalue 1 and solves the network for the requested drive.
    Without an explicit mode the current drive is used when current sources exist,
    otherwise the voltage drive. The bridge-network self-duality is checked whenever the
    reduced network has that topology.

    :param n: Netlist: The network
    :param config: RunConfig: Tolerances
    :param mode: DriveMode: Drive mode, or None for the default
    :param drives: dict: Generator value overrides
    :return: CircuitReport
    """
    reduced = circuits.reduce_netlist(n)
    k0 = sigma1 = None
    try:
        k0 = circuits.k0_power_form(reduced)
    except Trivial:
        logger.info("no meshes: K0 is empty")
    try:
        sigma1 = circuits.sigma1_power_form(reduced)
    except Trivial:
        logger.info("single node: Sigma1 is empty")

    spectrum_k0 = numkit.spectrum_of(k0, config.zero_tol) if k0 is not None else None
    spectrum_s1 = numkit.spectrum_of(sigma1, config.zero_tol) if sigma1 is not None else None
    if spectrum_k0 is not None and spectrum_s1 is not None:
        spectra_matched = numkit.spectra_match(spectrum_k0, spectrum_s1, {1.0}, config.match_tol).matched
    else:
        spectra_matched = True

    if mode is None and n.current_sources:
        mode = DriveMode.current
    elif mode is None and n.voltage_sources:
        mode = DriveMode.voltage
    power = None
    if mode is not None:
        drive = circuits.drive_vector(reduced, mode, drives)
        solve = circuits.solve_current_driven if mode is DriveMode.current else circuits.solve_voltage_driven
        _, power = solve(reduced, drive)
    elif drives:
        raise InvalidInput(f"{messages.NO_GENERATORS}: {sorted(drives)}")

    try:
        duality = circuits.self_duality_check(reduced)
    except WrongTopology:
        duality = None

    passed = spectra_matched and (power is None or power.passed) and (duality is None or duality.passed)
    return CircuitReport(
        vertex_map=list(reduced.vertex_map),
        chords=list(reduced.basis.chords),
        cochords=list(reduced.basis.cochords),
        K0=k0.entries.tolist() if k0 is not None else None,
        Sigma1=sigma1.entries.tolist() if sigma1 is not None else None,
        spectrum_K0=list(spectrum_k0.values) if spectrum_k0 is not None else [],
        spectrum_Sigma1=list(spectrum_s1.values) if spectrum_s1 is not None else [],
        spectra_matched=spectra_matched,
        power=power,
        self_duality=duality,
        passed=passed,
    )


def handle(args: argparse.Namespace, config: RunConfig) -> tuple[CircuitReport, int]:
    netlist = load_netlist(args.file)
    mode = DriveMode(args.mode) if args.mode else None
    report = analyze_circuit(netlist, config, mode, parse_drives(args.drive))
    return report, EXIT_OK if report.passed else EXIT_FAILED
