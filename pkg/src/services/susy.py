import logging

import numpy as np
import scipy.linalg

from src.exceptions import AlgebraViolation
from src.models import BridgeMatrices, HamiltonianBlock, KSigmaForms, SusyPair, SymMatrix, frozen_array
from src.schemas import SusyReport
from src.services import numkit

logger = logging.getLogger(__name__)

ALGEBRA_TOL = 1e-10


def _residual(x: np.ndarray, scale: float) -> float:
    return float(np.max(np.abs(x))) / scale if x.size else 0.0


def algebra_residuals(hamiltonian: np.ndarray, q: np.ndarray) -> dict[str, float]:
    """
    The algebra_residuals function measures, relative to max(1, ‖ℋ‖), how far ℋ and 𝒬 are
    from the relations ``[ℋ,𝒬] = [ℋ,𝒬ᵀ] = 0``, ``{𝒬,𝒬} = {𝒬ᵀ,𝒬ᵀ} = 0``,
    ``{𝒬,𝒬ᵀ} = ℋ`` and ``𝒬₊² = 𝒬₋² = ℋ`` with ``𝒬₊ = 𝒬 + 𝒬ᵀ`` and ``𝒬₋ = i(𝒬 - 𝒬ᵀ)``.

    :param hamiltonian: Square array
    :param q: Supercharge of the same size
    :return: Residuals keyed by relation
    """
    scale = max(1.0, float(np.max(np.abs(hamiltonian))) if hamiltonian.size else 0.0)
    qt = q.T
    q_plus = q + qt
    q_minus = q - qt
    return {
        "[H,Q]": _residual(hamiltonian @ q - q @ hamiltonian, scale),
        "[H,Qt]": _residual(hamiltonian @ qt - qt @ hamiltonian, scale),
        "{Q,Q}": _residual(2 * q @ q, scale),
        "{Qt,Qt}": _residual(2 * qt @ qt, scale),
        "{Q,Qt}-H": _residual(q @ qt + qt @ q - hamiltonian, scale),
        "Q+^2-H": _residual(q_plus @ q_plus - hamiltonian, scale),
        # (i(Q - Qᵀ))² = -(Q - Qᵀ)²
        "Q-^2-H": _residual(-(q_minus @ q_minus) - hamiltonian, scale),
    }


def build_susy(
    bridge: BridgeMatrices,
    forms: KSigmaForms,
    hamiltonian_block: HamiltonianBlock = HamiltonianBlock.k0,
    strict: bool = True,
    tol: float = ALGEBRA_TOL,
) -> SusyPair:
    """
    The build_susy function assembles the supercharge ``𝒬 = [[0, 0], [D, 0]]`` and the
    Hamiltonian ``ℋ = diag(K0 - I, Σ1 - I)``, then checks the algebra.

    ``hamiltonian_block=K1`` puts ``K1 - I`` in the first block instead. That block only
    fits 𝒬 when n0 = n1, and the algebra then generally fails; a size mismatch is
    reported with an infinite residual.

    :param bridge: BridgeMatrices: Supplies D
    :param forms: KSigmaForms: Supplies the diagonal blocks
    :param hamiltonian_block: HamiltonianBlock: First diagonal block
    :param strict: bool: Raise AlgebraViolation when a residual exceeds tol
    :param tol: float: Largest accepted relative residual
    :return: SusyPair
    """
    d = bridge.D
    n1, n0 = d.shape
    q = np.zeros((n0 + n1, n0 + n1))
    q[n0:, :n0] = d

    first = forms.K0.entries if hamiltonian_block is HamiltonianBlock.k0 else forms.K1.entries
    hamiltonian = scipy.linalg.block_diag(first - np.eye(first.shape[0]), forms.Sigma1.entries - np.eye(n1))
    if hamiltonian.shape != q.shape:
        residuals = {"shape": float("inf")}
    else:
        residuals = algebra_residuals(hamiltonian, q)
    worst = max(residuals.values())
    logger.debug("susy pair (%s block): worst residual %.3e", hamiltonian_block.value, worst)
    if strict and worst > tol:
        raise AlgebraViolation(f"Supersymmetry algebra does not hold (residual {worst:.3e})", residual=worst)
    return SusyPair(
        hamiltonian=SymMatrix(hamiltonian),
        supercharge=frozen_array(q),
        n0=n0,
        n1=n1,
        block=hamiltonian_block,
        residuals=residuals,
    )


def ground_states(pair: SusyPair, rel_tol: float = numkit.DEFAULT_REL_TOL, tol: float = ALGEBRA_TOL) -> np.ndarray:
    """
    The ground_states function returns an orthonormal basis of the kernel of ℋ.

    When the algebra holds the kernel of ℋ is the common kernel of 𝒬 and 𝒬ᵀ, and is
    read from the singular values of D with the same threshold as its rank; otherwise
    the eigenvalues of ℋ below the zero threshold are used.

    :param pair: SusyPair: Hamiltonian and supercharge
    :param rel_tol: float: Relative zero threshold
    :param tol: float: Residual under which the algebra counts as satisfied
    :return: Array whose columns span the ground states
    """
    if max(pair.residuals.values(), default=0.0) <= tol:
        q = pair.supercharge
        stacked = np.vstack([q, q.T])
        rcond = rel_tol * max(pair.n0, pair.n1, 1)
        return scipy.linalg.null_space(stacked, rcond=rcond)
    spectrum, vectors = numkit.sym_eig(pair.hamiltonian, rel_tol)
    keep = [k for k, v in enumerate(spectrum.values) if abs(v) <= spectrum.zero_tol]
    return vectors[:, keep]


def susy_report(pair: SusyPair, r: int, rel_tol: float = numkit.DEFAULT_REL_TOL, tol: float = ALGEBRA_TOL) -> SusyReport:
    kernel = ground_states(pair, rel_tol, tol)
    expected = (pair.n0 - r) + (pair.n1 - r)
    algebra_ok = max(pair.residuals.values(), default=0.0) <= tol
    return SusyReport(
        block=pair.block,
        residuals=dict(pair.residuals),
        algebra_ok=algebra_ok,
        hamiltonian_spectrum=list(numkit.spectrum_of(pair.hamiltonian, rel_tol).values),
        ground_state_dim=int(kernel.shape[1]),
        expected_ground_state_dim=expected,
        passed=algebra_ok and kernel.shape[1] == expected,
    )
