import logging
import math

import numpy as np
import scipy.linalg

from src.conf import messages
from src.exceptions import (
    DegenerateSubspace,
    InvalidInput,
    NonIdentityH,
    NotComplementary,
    NotIdempotent,
    SingularGram,
    Trivial,
)
from src.models import (
    BridgeMatrices,
    KSigmaForms,
    MetricBlocks,
    MetricSpace,
    NaturalBasis,
    ProjectionPair,
    Spectrum,
    SubspaceBasis,
    SymMatrix,
    frozen_array,
)
from src.schemas import Multiplicity, SingularValueReport, Theorem1Report, Theorem2Report
from src.services import numkit

logger = logging.getLogger(__name__)

BLOCK_IDENTITY_TOL = 1e-8
BRIDGE_TOL = 1e-9
PARALLEL_LIMIT = 1.0 - 1e-12
FORM_PAIRS = (("K0", "K1"), ("K0", "Sigma0"), ("K0", "Sigma1"), ("K1", "Sigma0"), ("K1", "Sigma1"), ("Sigma0", "Sigma1"))


def _rel(residual: np.ndarray, *scales) -> float:
    if residual.size == 0:
        return 0.0
    norm = max([1.0] + [float(np.max(np.abs(s))) for s in scales if np.asarray(s).size])
    return float(np.max(np.abs(residual))) / norm


def metric_space(G, H=None, rel_tol: float = numkit.DEFAULT_REL_TOL) -> MetricSpace:
    """
    The metric_space function builds a MetricSpace, checking that G and H are
    positive-definite and of the same size.

    :param G: Metric as a symmetric array
    :param H: Scalar product as a symmetric array; identity when omitted
    :param rel_tol: float: Relative tolerance of the definiteness check
    :return: A MetricSpace
    """
    g = numkit.as_sym(G)
    h = numkit.as_sym(np.eye(g.dim) if H is None else H)
    if h.dim != g.dim:
        raise InvalidInput(messages.SHAPE_MISMATCH)
    for form in (g, h):
        w = np.linalg.eigvalsh(form.entries)
        if w[0] <= rel_tol * np.max(np.abs(w)):
            raise InvalidInput(messages.NOT_POSITIVE_DEFINITE)
    return MetricSpace(G=g, H=h)


def validate_projection_pair(P0, P1, tol: float = 1e-10, rel_tol: float = numkit.DEFAULT_REL_TOL) -> ProjectionPair:
    """
    The validate_projection_pair function certifies that P0 and P1 are complementary
    projections: both idempotent, summing to the identity, neither null.

    Residuals are compared against ``tol`` scaled by the squared size of the input.

    :param P0: First projection
    :param P1: Second projection
    :param tol: float: Tolerance of the algebraic checks
    :param rel_tol: float: Relative tolerance of the rank computation
    :return: A ProjectionPair
    """
    p0 = np.array(P0, dtype=float)
    p1 = np.array(P1, dtype=float)
    if p0.ndim != 2 or p0.shape[0] != p0.shape[1]:
        raise InvalidInput(messages.NOT_SQUARE)
    if p0.shape != p1.shape:
        raise InvalidInput(messages.SHAPE_MISMATCH)
    if not (np.all(np.isfinite(p0)) and np.all(np.isfinite(p1))):
        raise InvalidInput(messages.NOT_FINITE)
    n = p0.shape[0]
    scale = tol * max(1.0, np.linalg.norm(p0, np.inf), np.linalg.norm(p1, np.inf)) ** 2

    if np.max(np.abs(p0 @ p0 - p0)) > scale:
        raise NotIdempotent(f"{messages.NOT_IDEMPOTENT}: P0")
    if np.max(np.abs(p1 @ p1 - p1)) > scale:
        raise NotIdempotent(f"{messages.NOT_IDEMPOTENT}: P1")
    if np.max(np.abs(p0 + p1 - np.eye(n))) > scale:
        raise NotComplementary()
    if np.max(np.abs(p0 @ p1)) > scale or np.max(np.abs(p1 @ p0)) > scale:
        raise NotComplementary()

    n0 = numkit.matrix_rank(p0, rel_tol)
    n1 = numkit.matrix_rank(p1, rel_tol)
    if n0 in (0, n) or n1 in (0, n):
        raise Trivial()
    if n0 + n1 != n:
        raise NotComplementary("Ranks of P0 and P1 do not add up to the dimension")
    logger.debug("validated projection pair: n=%d n0=%d n1=%d", n, n0, n1)
    return ProjectionPair(P0=frozen_array(p0), P1=frozen_array(p1), n0=n0, n1=n1)


def adjoint(op, space: MetricSpace) -> np.ndarray:
    """H-adjoint ``H⁻¹ Oᵀ H`` of an operator."""
    h = space.H.entries
    return scipy.linalg.solve(h, np.asarray(op, dtype=float).T @ h, assume_a="pos")


def dual_projections(pair: ProjectionPair, space: MetricSpace) -> tuple[np.ndarray, np.ndarray]:
    """
    The dual_projections function returns the projections acting on the dual space,
    ``P* = H P† H⁻¹`` with ``P†`` the H-adjoint.

    :param pair: ProjectionPair: Certified pair
    :param space: MetricSpace: Supplies H
    :return: (P0*, P1*)
    """
    h = space.H.entries
    duals = []
    for p in (pair.P0, pair.P1):
        dagger = adjoint(p, space)
        duals.append(frozen_array(scipy.linalg.solve(h.T, (h @ dagger).T, assume_a="pos").T))
    return duals[0], duals[1]


def induced_metrics_full(pair: ProjectionPair, space: MetricSpace) -> tuple[SymMatrix, SymMatrix, SymMatrix, SymMatrix]:
    """
    The induced_metrics_full function returns L0, L1, Γ0, Γ1 as full-space forms
    in an orthonormal basis: ``L = PᵀGP`` and ``Γ = P G⁻¹ Pᵀ``.

    :param pair: ProjectionPair: Certified pair
    :param space: MetricSpace: Must have the identity scalar product
    :return: (L0, L1, Gamma0, Gamma1)
    """
    if not space.h_is_identity:
        raise NonIdentityH()
    g = space.G.entries
    g_inv = scipy.linalg.inv(g)
    p0, p1 = pair.P0, pair.P1
    return (
        SymMatrix(p0.T @ g @ p0),
        SymMatrix(p1.T @ g @ p1),
        SymMatrix(p0 @ g_inv @ p0.T),
        SymMatrix(p1 @ g_inv @ p1.T),
    )


def full_space_operators(pair: ProjectionPair, space: MetricSpace) -> dict[str, np.ndarray]:
    """
    The full_space_operators function returns the operators associated with the four
    induced forms through the scalar product: ``H⁻¹L`` for the primal forms and
    ``HΓ`` for the dual ones. Their pseudodeterminants are the
    quantities compared by verify_theorem1.

    :param pair: ProjectionPair: Certified pair
    :param space: MetricSpace: Any H and G
    :return: Operators keyed by form name
    """
    g, h = space.G.entries, space.H.entries
    g_inv = scipy.linalg.inv(g)
    ops = {}
    for k, p in enumerate((pair.P0, pair.P1)):
        ops[f"L{k}"] = scipy.linalg.solve(h, p.T @ g @ p, assume_a="pos")
        ops[f"Gamma{k}"] = h @ (p @ g_inv @ p.T)
    return ops


def _h_orthonormal_columns(a: np.ndarray, h: np.ndarray, expected: int, rel_tol: float = 1e-8) -> np.ndarray:
    # column-pivoted modified Gram-Schmidt in the H inner product, two passes per vector
    residual = np.array(a, dtype=float)
    norms = np.sqrt(np.maximum(np.einsum("ij,ik,kj->j", residual, h, residual), 0.0))
    threshold = rel_tol * max(float(norms.max()) if norms.size else 0.0, 1e-300)
    basis = []
    for _ in range(expected):
        norms = np.sqrt(np.maximum(np.einsum("ij,ik,kj->j", residual, h, residual), 0.0))
        j = int(np.argmax(norms))
        if norms[j] <= threshold:
            raise DegenerateSubspace()
        q = residual[:, j].copy()
        for _ in range(2):
            for b in basis:
                q -= (b @ h @ q) * b
        q /= math.sqrt(float(q @ h @ q))
        basis.append(q)
        residual -= np.outer(q, q @ h @ residual)
    if expected < residual.shape[1]:
        leftover = np.sqrt(np.maximum(np.einsum("ij,ik,kj->j", residual, h, residual), 0.0))
        if leftover.size and leftover.max() > threshold * 1e2:
            raise DegenerateSubspace("Range has a larger dimension than the rank")
    return np.column_stack(basis) if basis else np.zeros((a.shape[0], 0))


def natural_basis(pair: ProjectionPair, space: MetricSpace) -> NaturalBasis:
    """
    The natural_basis function builds H-orthonormal bases of the ranges of P0 and P1
    by Gram–Schmidt on their columns, and the cross-Gram block ``Omega = Vᵀ H W``.

    :param pair: ProjectionPair: Certified pair
    :param space: MetricSpace: Supplies H
    :return: A NaturalBasis
    """
    h = space.H.entries
    v = _h_orthonormal_columns(pair.P0, h, pair.n0)
    w = _h_orthonormal_columns(pair.P1, h, pair.n1)
    omega = v.T @ h @ w
    cosines = np.linalg.svd(omega, compute_uv=False)
    if cosines.size and cosines[0] >= PARALLEL_LIMIT:
        raise DegenerateSubspace(messages.NEARLY_PARALLEL)
    logger.debug("natural basis: largest principal cosine %.6f", cosines[0] if cosines.size else 0.0)
    return NaturalBasis(V=frozen_array(v), W=frozen_array(w), Omega=frozen_array(omega))


def adapted_basis(V, W, space: MetricSpace) -> SubspaceBasis:
    """
    The adapted_basis function wraps any basis adapted to the decomposition (columns
    of V spanning the first subspace, columns of W the second). It need not be orthonormal.

    :param V: n × n0 array
    :param W: n × n1 array
    :param space: MetricSpace: Supplies H
    :return: A SubspaceBasis
    """
    v = np.array(V, dtype=float)
    w = np.array(W, dtype=float)
    if v.shape[0] != space.dim or w.shape[0] != space.dim or v.shape[1] + w.shape[1] != space.dim:
        raise InvalidInput(messages.SHAPE_MISMATCH)
    omega = v.T @ space.H.entries @ w
    return SubspaceBasis(V=frozen_array(v), W=frozen_array(w), Omega=frozen_array(omega))


def metric_blocks(basis: SubspaceBasis, space: MetricSpace) -> MetricBlocks:
    """
    The metric_blocks function reads the primal blocks L0, L1, V from the Gram matrix
    of G over the stacked basis, and the dual blocks Γ0, Γ1, Λ from its inverse.

    The four Schur-complement identities linking the two sets are checked and a
    warning is logged when one of them is off by more than 1e-8 (relative).

    :param basis: SubspaceBasis: Natural basis or any adapted basis
    :param space: MetricSpace: Supplies G and H
    :return: MetricBlocks
    """
    n0 = basis.n0
    s = basis.stacked
    gram = s.T @ space.G.entries @ s
    gram = (gram + gram.T) / 2.0
    gram_h = s.T @ space.H.entries @ s
    gram_h = (gram_h + gram_h.T) / 2.0
    if np.linalg.cond(gram) > 1e14:
        raise SingularGram()
    try:
        inverse = scipy.linalg.inv(gram)
    except (np.linalg.LinAlgError, ValueError) as err:
        raise SingularGram(str(err))
    inverse = (inverse + inverse.T) / 2.0

    L0, L1 = gram[:n0, :n0], gram[n0:, n0:]
    v_off = gram[n0:, :n0]
    gamma0, gamma1 = inverse[:n0, :n0], inverse[n0:, n0:]
    lam = inverse[n0:, :n0]

    inv = np.linalg.inv
    residuals = {
        "Gamma0": _rel(inv(gamma0) - (L0 - v_off.T @ inv(L1) @ v_off), L0),
        "Gamma1": _rel(inv(gamma1) - (L1 - v_off @ inv(L0) @ v_off.T), L1),
        "L0": _rel(inv(L0) - (gamma0 - lam.T @ inv(gamma1) @ lam), gamma0),
        "L1": _rel(inv(L1) - (gamma1 - lam @ inv(gamma0) @ lam.T), gamma1),
    }
    worst = max(residuals.values())
    if worst > BLOCK_IDENTITY_TOL:
        logger.warning("block inverse identities off by %.3e (relative): %s", worst, residuals)
    logger.debug("metric blocks: n0=%d n1=%d identity residual %.3e", n0, basis.n1, worst)
    return MetricBlocks(
        L0=SymMatrix(L0),
        L1=SymMatrix(L1),
        V_off=frozen_array(v_off),
        Gamma0=SymMatrix(gamma0),
        Gamma1=SymMatrix(gamma1),
        Lambda_off=frozen_array(lam),
        Omega=frozen_array(basis.Omega),
        gram_h=frozen_array(gram_h),
        identity_residual=worst,
    )


def _logdet(a: np.ndarray) -> tuple[float, float]:
    if a.size == 0:
        return 1.0, 0.0
    sign, logabs = np.linalg.slogdet(a)
    return float(sign), float(logabs)


def _value(sign: float, logabs: float) -> float:
    return sign * math.exp(logabs)


def det_plus_blocks(blocks: MetricBlocks) -> dict[str, float]:
    """
    The det_plus_blocks function evaluates the pseudodeterminants of the four induced
    forms from their blocks. Volume factors come from the scalar-product Gram matrix:
    ``det₊L0 = det L0 / det(H00 - H01 H11⁻¹ H10)`` and ``det₊Γ0 = det Γ0 · det H00``,
    which for the natural basis reduce to ``det L0 / det(I - ΩΩᵀ)`` and ``det Γ0``.

    :param blocks: MetricBlocks: Blocks in any adapted basis
    :return: Pseudodeterminants keyed by form name
    """
    n0 = blocks.n0
    gh = blocks.gram_h
    h00, h11 = gh[:n0, :n0], gh[n0:, n0:]
    h01, h10 = gh[:n0, n0:], gh[n0:, :n0]
    schur0 = h00 - h01 @ np.linalg.solve(h11, h10)
    schur1 = h11 - h10 @ np.linalg.solve(h00, h01)

    parts = {
        "L0": (_logdet(blocks.L0.entries), _logdet(schur0), -1),
        "L1": (_logdet(blocks.L1.entries), _logdet(schur1), -1),
        "Gamma0": (_logdet(blocks.Gamma0.entries), _logdet(h00), 1),
        "Gamma1": (_logdet(blocks.Gamma1.entries), _logdet(h11), 1),
    }
    values = {}
    for name, ((s1, l1), (s2, l2), power) in parts.items():
        values[name] = _value(s1 * s2, l1 + power * l2)
    return values


def det_plus_metric(space: MetricSpace) -> float:
    sign_g, log_g = _logdet(space.G.entries)
    sign_h, log_h = _logdet(space.H.entries)
    return _value(sign_g * sign_h, log_g - log_h)


def verify_theorem1(
    blocks: MetricBlocks,
    space: MetricSpace,
    tol: float = 1e-8,
    pair: ProjectionPair | None = None,
    rel_tol: float = 1e-8,
) -> Theorem1Report:
    """
    The verify_theorem1 function checks the pseudodeterminant duality
    ``det₊L1 / det₊Γ0 = det₊L0 / det₊Γ1 = det₊G``.

    When ``pair`` is given the four pseudodeterminants are also computed from the
    eigenvalues of the full-space operators and compared with the block formulas.

    :param blocks: MetricBlocks: Blocks of the decomposition
    :param space: MetricSpace: Supplies G and H
    :param tol: float: Relative tolerance of the equality
    :param pair: ProjectionPair: Optional, enables the full-space cross-check
    :param rel_tol: float: Zero threshold for the full-space cross-check
    :return: Theorem1Report
    """
    det_plus = det_plus_blocks(blocks)
    lhs1 = det_plus["L1"] / det_plus["Gamma0"]
    lhs2 = det_plus["L0"] / det_plus["Gamma1"]
    rhs = det_plus_metric(space)
    passed = abs(lhs1 - rhs) <= tol * abs(rhs) and abs(lhs2 - rhs) <= tol * abs(rhs)

    oracle = oracle_passed = None
    if pair is not None:
        ops = full_space_operators(pair, space)
        oracle = {name: numkit.operator_pseudodet(op, rel_tol) for name, op in ops.items()}
        oracle_tol = max(tol, 1e-6)
        oracle_passed = all(
            abs(oracle[name] - det_plus[name]) <= oracle_tol * max(abs(det_plus[name]), 1e-300) for name in det_plus
        )
        passed = passed and oracle_passed
    if not passed:
        logger.info("pseudodeterminant duality failed: lhs1=%r lhs2=%r rhs=%r", lhs1, lhs2, rhs)
    return Theorem1Report(
        lhs1=lhs1, lhs2=lhs2, rhs=rhs, det_plus=det_plus, passed=passed, oracle=oracle, oracle_passed=oracle_passed
    )


def k_sigma_forms(blocks: MetricBlocks) -> KSigmaForms:
    """
    The k_sigma_forms function builds ``K = Γ^½ L Γ^½`` and ``Σ = L^½ Γ L^½`` on both subspaces.

    :param blocks: MetricBlocks: Blocks of the decomposition
    :return: KSigmaForms
    """
    g0, g1 = numkit.psd_sqrt(blocks.Gamma0).entries, numkit.psd_sqrt(blocks.Gamma1).entries
    l0, l1 = numkit.psd_sqrt(blocks.L0).entries, numkit.psd_sqrt(blocks.L1).entries
    return KSigmaForms(
        K0=SymMatrix(g0 @ blocks.L0.entries @ g0),
        K1=SymMatrix(g1 @ blocks.L1.entries @ g1),
        Sigma0=SymMatrix(l0 @ blocks.Gamma0.entries @ l0),
        Sigma1=SymMatrix(l1 @ blocks.Gamma1.entries @ l1),
    )


def bridge_matrices(blocks: MetricBlocks, forms: KSigmaForms | None = None, rel_tol: float = numkit.DEFAULT_REL_TOL) -> BridgeMatrices:
    """
    The bridge_matrices function computes the two bridge matrices
    ``D = L1^½ Λ Γ0^-½`` (n1 × n0) and ``B = L0^½ Λᵀ Γ1^-½`` (n0 × n1).

    Checked along the way: each has an antisymmetric partner built from the primal
    off-diagonal block (``Γ0^½ Vᵀ L1^-½ = -Dᵀ`` and ``Γ1^½ V L0^-½ = -Bᵀ``), the forms
    satisfy ``K0 = I + DᵀD``, ``Σ1 = I + DDᵀ``, ``K1 = I + BᵀB``, ``Σ0 = I + BBᵀ``, and
    ``DᵀD`` and ``BBᵀ`` are similar through ``L0^½ Γ0^½``.

    :param blocks: MetricBlocks: Blocks of the decomposition
    :param forms: KSigmaForms: Computed from the blocks when omitted
    :param rel_tol: float: Relative tolerance of the rank of D
    :return: BridgeMatrices
    """
    if forms is None:
        forms = k_sigma_forms(blocks)
    n0, n1 = blocks.n0, blocks.n1
    l0h, l1h = numkit.psd_sqrt(blocks.L0).entries, numkit.psd_sqrt(blocks.L1).entries
    l0ih, l1ih = numkit.psd_inv_sqrt(blocks.L0).entries, numkit.psd_inv_sqrt(blocks.L1).entries
    g0h, g1h = numkit.psd_sqrt(blocks.Gamma0).entries, numkit.psd_sqrt(blocks.Gamma1).entries
    g0ih, g1ih = numkit.psd_inv_sqrt(blocks.Gamma0).entries, numkit.psd_inv_sqrt(blocks.Gamma1).entries
    lam, v_off = blocks.Lambda_off, blocks.V_off

    d = l1h @ lam @ g0ih
    d_partner = g0h @ v_off.T @ l1ih
    b = l0h @ lam.T @ g1ih
    b_partner = g1h @ v_off @ l0ih

    k0, k1 = forms.K0.entries, forms.K1.entries
    s0, s1 = forms.Sigma0.entries, forms.Sigma1.entries
    dtd, ddt = d.T @ d, d @ d.T
    btb, bbt = b.T @ b, b @ b.T
    n_mat = l0h @ g0h
    residuals = {
        "D_antisymmetry": _rel(d_partner + d.T, d),
        "B_antisymmetry": _rel(b_partner + b.T, b),
        "K0": _rel(k0 - np.eye(n0) - dtd, k0),
        "Sigma1": _rel(s1 - np.eye(n1) - ddt, s1),
        "K1": _rel(k1 - np.eye(n1) - btb, k1),
        "Sigma0": _rel(s0 - np.eye(n0) - bbt, s0),
        "similarity": _rel(np.linalg.solve(n_mat, bbt @ n_mat) - dtd, dtd, bbt),
    }
    worst = max(residuals.values())
    if worst > BRIDGE_TOL:
        logger.warning("bridge relations off by %.3e (relative): %s", worst, residuals)
    r = numkit.matrix_rank(d, rel_tol)
    logger.debug("bridge matrices: r=%d", r)
    return BridgeMatrices(B=frozen_array(b), D=frozen_array(d), r=r, residuals=residuals)


def _multiplicity(spectrum, dim: int, full_dim: int, tol: float) -> Multiplicity:
    zero = sum(1 for v in spectrum.values if abs(v) <= spectrum.zero_tol)
    above = spectrum.count_above(1.0, tol)
    one = spectrum.count_near(1.0, tol)
    return Multiplicity(above_one=above, one=one, zero=zero + full_dim - dim)


def verify_theorem2(
    forms: KSigmaForms,
    bridge: BridgeMatrices,
    tol: float = 1e-8,
    rel_tol: float = numkit.DEFAULT_REL_TOL,
) -> Theorem2Report:
    """
    The verify_theorem2 function checks that K0, K1, Σ0, Σ1 share their spectrum up to
    the multiplicities of 0 and 1, that no nonzero eigenvalue is below 1, and that the
    multiplicities seen in the full space are those fixed by the rank r of D:
    K0 and Σ0 have (r above one, n0 - r at one, n1 zeros), K1 and Σ1 have (r, n1 - r, n0).

    :param forms: KSigmaForms: The four forms
    :param bridge: BridgeMatrices: Supplies r and the bridge residuals
    :param tol: float: Matching tolerance
    :param rel_tol: float: Relative zero threshold
    :return: Theorem2Report
    """
    named = {"K0": forms.K0, "K1": forms.K1, "Sigma0": forms.Sigma0, "Sigma1": forms.Sigma1}
    spectra = {name: numkit.spectrum_of(m, rel_tol) for name, m in named.items()}
    matches = {
        f"{a}~{b}": numkit.spectra_match(spectra[a], spectra[b], {0.0, 1.0}, tol).matched for a, b in FORM_PAIRS
    }
    nonzero = [v for s in spectra.values() for v in s.nonzero()]
    min_nonzero = min(nonzero) if nonzero else 1.0

    n0, n1 = forms.K0.dim, forms.K1.dim
    n, r = n0 + n1, bridge.r
    expected = {
        "K0": Multiplicity(above_one=r, one=n0 - r, zero=n1),
        "Sigma0": Multiplicity(above_one=r, one=n0 - r, zero=n1),
        "K1": Multiplicity(above_one=r, one=n1 - r, zero=n0),
        "Sigma1": Multiplicity(above_one=r, one=n1 - r, zero=n0),
    }
    observed = {name: _multiplicity(spectra[name], named[name].dim, n, tol) for name in named}

    # singular values of D whose squares sit inside the tolerance band around 1
    s = np.linalg.svd(bridge.D, compute_uv=False) if bridge.D.size else np.zeros(0)
    band = int(np.sum((s > 0) & (s**2 <= tol))) if s.size else 0
    multiplicity_ok = True
    for name, want in expected.items():
        got = observed[name]
        if got.zero != want.zero or got.above_one + got.one + got.zero != n:
            multiplicity_ok = False
        if not (want.above_one - band <= got.above_one <= want.above_one):
            multiplicity_ok = False

    bridge_ok = all(v <= tol for v in bridge.residuals.values())
    matched = all(matches.values())
    passed = matched and min_nonzero >= 1.0 - tol and multiplicity_ok and bridge_ok
    if not passed:
        logger.info("spectral duality failed: matches=%s min_nonzero=%r multiplicities=%s", matches, min_nonzero, observed)
    return Theorem2Report(
        spectra={name: list(sp.values) for name, sp in spectra.items()},
        matches=matches,
        matched=matched,
        min_nonzero=min_nonzero,
        r=r,
        multiplicities=observed,
        expected_multiplicities=expected,
        multiplicity_ok=multiplicity_ok,
        bridge_residuals=dict(bridge.residuals),
        bridge_ok=bridge_ok,
        passed=passed,
    )


def singular_value_duality(pair: ProjectionPair, tol: float = 1e-9) -> SingularValueReport:
    """
    The singular_value_duality function checks that complementary projections have the
    same singular values up to the multiplicities of 0 and 1, hence equal norms.

    :param pair: ProjectionPair: Certified pair (orthonormal setting, G = H = I)
    :param tol: float: Matching tolerance
    :return: SingularValueReport
    """
    s0 = np.linalg.svd(pair.P0, compute_uv=False)
    s1 = np.linalg.svd(pair.P1, compute_uv=False)
    match = numkit.spectra_match(
        Spectrum(tuple(s0), numkit.zero_threshold(s0, pair.dim)),
        Spectrum(tuple(s1), numkit.zero_threshold(s1, pair.dim)),
        {0.0, 1.0},
        tol,
    )
    norm0, norm1 = float(s0[0]), float(s1[0])
    norms_equal = abs(norm0 - norm1) <= tol * max(1.0, norm0, norm1)
    return SingularValueReport(
        singular_values_p0=[float(x) for x in s0],
        singular_values_p1=[float(x) for x in s1],
        norm_p0=norm0,
        norm_p1=norm1,
        matched=match.matched,
        passed=match.matched and norms_equal,
    )
