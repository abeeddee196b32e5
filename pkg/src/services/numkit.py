import logging
import math

import numpy as np

from src.conf import messages
from src.exceptions import InvalidInput, NotPSD
from src.models import CharPoly, Spectrum, SymMatrix, frozen_array
from src.schemas import SpectrumMatch

logger = logging.getLogger(__name__)

DEFAULT_REL_TOL = 1e-10
SIGN_TOL = 1e-12


def as_sym(a) -> SymMatrix:
    """
    The as_sym function wraps an array-like into a SymMatrix, passing SymMatrix through.

    :param a: SymMatrix or anything numpy can read as a square array
    :return: A SymMatrix
    """
    return a if isinstance(a, SymMatrix) else SymMatrix(a)


def zero_threshold(values, dim: int, rel_tol: float = DEFAULT_REL_TOL) -> float:
    """
    The zero_threshold function returns the absolute cutoff below which an eigenvalue
    counts as zero: ``rel_tol * dim * max|λ|``, or ``rel_tol`` itself for an all-zero spectrum.

    :param values: Eigenvalues (or singular values)
    :param dim: int: Dimension of the operator
    :param rel_tol: float: Relative tolerance
    :return: The absolute threshold
    """
    values = np.asarray(values, dtype=float)
    scale = float(np.max(np.abs(values))) if values.size else 0.0
    threshold = rel_tol * max(dim, 1) * scale
    return threshold if threshold > 0 else rel_tol


def sym_eig(a, rel_tol: float = DEFAULT_REL_TOL) -> tuple[Spectrum, np.ndarray]:
    """
    The sym_eig function diagonalizes a real symmetric matrix.
    Eigenvalues come back in descending order; every eigenvector is signed so that
    its first nonzero component is positive.

    :param a: SymMatrix or symmetric array
    :param rel_tol: float: Relative tolerance of the zero threshold stored in the spectrum
    :return: The spectrum and the orthonormal eigenvectors as columns
    """
    m = as_sym(a)
    w, q = np.linalg.eigh(m.entries)
    order = np.argsort(-w, kind="stable")
    w = w[order]
    q = q[:, order].copy()
    for j in range(q.shape[1]):
        nonzero = np.flatnonzero(np.abs(q[:, j]) > SIGN_TOL)
        if nonzero.size and q[nonzero[0], j] < 0:
            q[:, j] = -q[:, j]
    spectrum = Spectrum(tuple(float(x) for x in w), zero_threshold(w, m.dim, rel_tol))
    return spectrum, frozen_array(q)


def spectrum_of(a, rel_tol: float = DEFAULT_REL_TOL) -> Spectrum:
    m = as_sym(a)
    w = np.linalg.eigvalsh(m.entries)
    return Spectrum(tuple(float(x) for x in w), zero_threshold(w, m.dim, rel_tol))


def pseudodet(a, rel_tol: float = DEFAULT_REL_TOL) -> float:
    """
    The pseudodet function multiplies the nonvanishing eigenvalues of a symmetric matrix.
    An empty product (zero-dimensional or all-zero input) is 1; callers that care
    about rank 0 check it separately.

    :param a: SymMatrix or symmetric array
    :param rel_tol: float: Relative tolerance of the zero threshold
    :return: The pseudodeterminant
    """
    if np.asarray(a).size == 0:
        return 1.0
    return float(math.prod(spectrum_of(a, rel_tol).nonzero()))


def operator_pseudodet(a, rel_tol: float = DEFAULT_REL_TOL) -> float:
    """
    The operator_pseudodet function is the pseudodeterminant of a general (nonsymmetric)
    real operator. Complex eigenvalues come in conjugate pairs, so the imaginary
    part of the product has to cancel.

    :param a: Square array
    :param rel_tol: float: Relative tolerance of the zero threshold
    :return: The real pseudodeterminant
    """
    a = np.asarray(a, dtype=float)
    if a.size == 0:
        return 1.0
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InvalidInput(messages.NOT_SQUARE)
    eig = np.linalg.eigvals(a)
    threshold = zero_threshold(np.abs(eig), a.shape[0], rel_tol)
    product = complex(math.prod(complex(x) for x in eig if abs(x) > threshold))
    if abs(product.imag) > 1e-8 * max(1.0, abs(product)):
        raise InvalidInput("Operator pseudodeterminant has a non-cancelling imaginary part")
    return product.real


def matrix_rank(a, rel_tol: float = DEFAULT_REL_TOL) -> int:
    """
    The matrix_rank function counts singular values above ``rel_tol * max(shape) * smax``.

    :param a: Any 2-D array
    :param rel_tol: float: Relative tolerance
    :return: The numerical rank
    """
    a = np.asarray(a, dtype=float)
    if a.size == 0:
        return 0
    s = np.linalg.svd(a, compute_uv=False)
    if s[0] == 0.0:
        return 0
    return int(np.sum(s > rel_tol * max(a.shape) * s[0]))


def psd_sqrt(a) -> SymMatrix:
    """
    The psd_sqrt function returns the unique positive-semidefinite square root.
    Eigenvalues down to ``-1e-10 * max|λ|`` are clamped to zero.

    :param a: SymMatrix or symmetric array
    :return: SymMatrix whose square is ``a``
    """
    m = as_sym(a)
    w, q = np.linalg.eigh(m.entries)
    scale = float(np.max(np.abs(w)))
    if w[0] < -1e-10 * scale:
        logger.debug("psd_sqrt: smallest eigenvalue %.3e of scale %.3e", w[0], scale)
        raise NotPSD()
    root = np.sqrt(np.clip(w, 0.0, None))
    return SymMatrix((q * root) @ q.T)


def psd_inv_sqrt(a) -> SymMatrix:
    m = as_sym(a)
    w, q = np.linalg.eigh(m.entries)
    if w[0] <= zero_threshold(w, m.dim):
        raise NotPSD(messages.NOT_POSITIVE_DEFINITE)
    return SymMatrix((q / np.sqrt(w)) @ q.T)


def charpoly(a) -> CharPoly:
    """
    The charpoly function computes the characteristic polynomial det(λI - a)
    with the Faddeev–LeVerrier recurrence.

    :param a: Square matrix (symmetric or not)
    :return: Monic CharPoly, highest degree first
    """
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InvalidInput(messages.NOT_SQUARE)
    n = a.shape[0]
    identity = np.eye(n)
    m = np.zeros((n, n))
    coefficients = [1.0]
    for k in range(1, n + 1):
        m = a @ m + coefficients[-1] * identity
        coefficients.append(-float(np.trace(a @ m)) / k)
    return CharPoly(tuple(coefficients))


def _strip(values, ignore, tol: float) -> list[float]:
    return [v for v in values if all(abs(v - c) > tol for c in ignore)]


def spectra_match(a: Spectrum, b: Spectrum, ignore=frozenset({0.0, 1.0}), tol: float = 1e-8) -> SpectrumMatch:
    """
    The spectra_match function compares two spectra as multisets after dropping
    every eigenvalue within ``tol`` of the ``ignore`` set.

    Both spectra are stripped with the same cutoff, ``tol`` widened to the larger of
    the two zero thresholds, so an eigenvalue is dropped only inside the numerical
    noise of its spectrum. The kept values are paired in descending order and must
    differ by at most ``tol``; any value left without partner is a mismatch.

    :param a: Spectrum: Left spectrum
    :param b: Spectrum: Right spectrum
    :param ignore: Subset of {0, 1}
    :param tol: float: Absolute matching tolerance
    :return: SpectrumMatch with the verdict and the unmatched values
    """
    ignore = frozenset(float(c) for c in ignore)
    if not ignore <= {0.0, 1.0}:
        raise InvalidInput("Only the eigenvalues 0 and 1 can be ignored")
    if tol <= 0:
        raise InvalidInput("Tolerance must be positive")
    cutoff = max(tol, a.zero_tol, b.zero_tol)
    left = _strip(a.values, ignore, cutoff)
    right = _strip(b.values, ignore, cutoff)

    unmatched_left, unmatched_right = [], []
    max_diff = 0.0
    i = j = 0
    while i < len(left) and j < len(right):
        x, y = left[i], right[j]
        if abs(x - y) <= tol:
            max_diff = max(max_diff, abs(x - y))
            i += 1
            j += 1
        elif x > y:
            unmatched_left.append(x)
            i += 1
        else:
            unmatched_right.append(y)
            j += 1
    unmatched_left.extend(left[i:])
    unmatched_right.extend(right[j:])

    matched = not unmatched_left and not unmatched_right
    if not matched:
        logger.debug("spectra differ: left-only %s right-only %s", unmatched_left, unmatched_right)
    return SpectrumMatch(
        matched=matched,
        left=left,
        right=right,
        unmatched_left=unmatched_left,
        unmatched_right=unmatched_right,
        max_diff=max_diff,
    )
