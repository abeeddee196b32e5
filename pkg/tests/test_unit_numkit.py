import unittest

import numpy as np
import scipy.linalg

from src.conf import messages
from src.exceptions import InvalidInput, NotPSD
from src.models import Spectrum, SymMatrix
from src.services import numkit


class TestSpectra(unittest.TestCase):
    def setUp(self):
        self.a = np.array([[2.0, 1.0, 0.0], [1.0, 2.0, 0.0], [0.0, 0.0, 0.0]])

    def test_sym_eig_descending(self):
        spectrum, q = numkit.sym_eig(self.a)
        np.testing.assert_allclose(spectrum.values, [3.0, 1.0, 0.0], atol=1e-12)
        np.testing.assert_allclose(q @ np.diag(spectrum.values) @ q.T, self.a, atol=1e-12)

    def test_sym_eig_sign_convention(self):
        _, q = numkit.sym_eig(-np.eye(2))
        for j in range(2):
            first = q[np.flatnonzero(np.abs(q[:, j]) > 1e-12)[0], j]
            self.assertGreater(first, 0)

    def test_sym_eig_result_is_read_only(self):
        _, q = numkit.sym_eig(self.a)
        with self.assertRaises(ValueError):
            q[0, 0] = 5.0

    def test_pseudodet_skips_zero(self):
        self.assertAlmostEqual(numkit.pseudodet(self.a), 3.0)

    def test_pseudodet_of_null_matrix_is_one(self):
        self.assertEqual(numkit.pseudodet(np.zeros((2, 2))), 1.0)

    def test_operator_pseudodet_nonsymmetric(self):
        op = np.array([[1.0, 5.0, 0.0], [0.0, 2.0, 0.0], [0.0, 0.0, 0.0]])
        self.assertAlmostEqual(numkit.operator_pseudodet(op), 2.0)

    def test_operator_pseudodet_rotation(self):
        rotation = np.array([[0.0, -2.0], [2.0, 0.0]])
        self.assertAlmostEqual(numkit.operator_pseudodet(rotation), 4.0)

    def test_rank(self):
        self.assertEqual(numkit.matrix_rank(self.a), 2)
        self.assertEqual(numkit.matrix_rank(np.zeros((3, 2))), 0)

    def test_non_symmetric_input_is_symmetrized(self):
        m = SymMatrix([[1.0, 2.0], [0.0, 1.0]])
        np.testing.assert_array_equal(m.entries, [[1.0, 1.0], [1.0, 1.0]])

    def test_non_finite_rejected(self):
        with self.assertRaises(InvalidInput) as ctx:
            numkit.spectrum_of([[np.nan]])
        self.assertEqual(ctx.exception.detail, messages.NOT_FINITE)

    def test_non_square_rejected(self):
        with self.assertRaises(InvalidInput) as ctx:
            numkit.as_sym(np.ones((2, 3)))
        self.assertEqual(ctx.exception.detail, messages.NOT_SQUARE)


class TestSquareRoots(unittest.TestCase):
    def test_psd_sqrt_squares_back(self):
        a = np.array([[4.0, 2.0], [2.0, 3.0]])
        root = numkit.psd_sqrt(a).entries
        np.testing.assert_allclose(root @ root, a, atol=1e-12)

    def test_psd_sqrt_of_singular(self):
        a = np.array([[1.0, 1.0], [1.0, 1.0]])
        root = numkit.psd_sqrt(a).entries
        np.testing.assert_allclose(root, a / np.sqrt(2.0), atol=1e-12)

    def test_psd_sqrt_rejects_negative(self):
        with self.assertRaises(NotPSD):
            numkit.psd_sqrt(np.diag([1.0, -0.5]))

    def test_psd_inv_sqrt(self):
        a = np.diag([4.0, 9.0])
        np.testing.assert_allclose(numkit.psd_inv_sqrt(a).entries, np.diag([0.5, 1 / 3]), atol=1e-12)

    def test_psd_inv_sqrt_rejects_singular(self):
        with self.assertRaises(NotPSD) as ctx:
            numkit.psd_inv_sqrt(np.diag([1.0, 0.0]))
        self.assertEqual(ctx.exception.detail, messages.NOT_POSITIVE_DEFINITE)


class TestCharPoly(unittest.TestCase):
    def test_two_by_two(self):
        poly = numkit.charpoly([[3.0, -1.0], [-1.0, 3.0]])
        np.testing.assert_allclose(poly.coefficients, [1.0, -6.0, 8.0], atol=1e-12)
        np.testing.assert_allclose(sorted(poly.roots()), [2.0, 4.0], atol=1e-10)

    def test_three_by_three_vanishes_on_spectrum(self):
        a = np.array([[2.0, 1.0, 0.0], [1.0, 3.0, 1.0], [0.0, 1.0, 4.0]])
        poly = numkit.charpoly(a)
        self.assertEqual(poly.degree, 3)
        for lam in np.linalg.eigvalsh(a):
            self.assertAlmostEqual(poly(lam), 0.0, places=9)


class TestRandomProperties(unittest.TestCase):
    def setUp(self):
        self.rng = np.random.default_rng(20240611)

    def test_sym_eig_reconstructs(self):
        for _ in range(10):
            m = self.rng.standard_normal((6, 6))
            a = (m + m.T) / 2.0
            spectrum, q = numkit.sym_eig(a)
            scale = max(1.0, float(np.max(np.abs(a))))
            self.assertLessEqual(np.max(np.abs(q @ np.diag(spectrum.values) @ q.T - a)), 1e-10 * scale)
            np.testing.assert_allclose(q.T @ q, np.eye(6), atol=1e-10)

    def test_psd_sqrt_squares_back(self):
        for n in range(2, 9):
            m = self.rng.standard_normal((n, n))
            a = m.T @ m
            root = numkit.psd_sqrt(a).entries
            np.testing.assert_allclose(root @ root, a, rtol=0, atol=1e-9 * np.max(np.abs(a)))

    def test_pseudodet_equals_lu_determinant(self):
        for n in range(2, 9):
            m = self.rng.standard_normal((n, n))
            a = m.T @ m + np.eye(n)
            lu, piv = scipy.linalg.lu_factor(a)
            sign = (-1.0) ** int(np.sum(piv != np.arange(n)))
            expected = sign * float(np.prod(np.diag(lu)))
            self.assertAlmostEqual(numkit.pseudodet(a), expected, delta=1e-9 * abs(expected))

    def test_charpoly_matches_eigenvalues(self):
        for n in range(2, 9):
            q, _ = np.linalg.qr(self.rng.standard_normal((n, n)))
            values = np.linspace(-2.0, 2.0, n) + self.rng.uniform(-0.05, 0.05, n)
            a = q @ np.diag(values) @ q.T
            poly = numkit.charpoly(a)
            expected = np.poly(np.linalg.eigvalsh(a))
            np.testing.assert_allclose(poly.coefficients, expected, rtol=0, atol=1e-8 * np.max(np.abs(expected)))
            np.testing.assert_allclose(np.sort(poly.roots().real), np.sort(values), atol=1e-8)


class TestSpectraMatch(unittest.TestCase):
    def test_match_up_to_zero_and_one(self):
        a = Spectrum((5.0, 2.0, 1.0, 0.0), 1e-12)
        b = Spectrum((5.0, 2.0, 1.0, 1.0, 1.0), 1e-12)
        result = numkit.spectra_match(a, b)
        self.assertTrue(result.matched)
        self.assertEqual(result.left, [5.0, 2.0])

    def test_mismatch_reported(self):
        a = Spectrum((5.0, 2.0), 1e-12)
        b = Spectrum((5.0, 3.0), 1e-12)
        result = numkit.spectra_match(a, b)
        self.assertFalse(result.matched)
        self.assertEqual(result.unmatched_left, [2.0])
        self.assertEqual(result.unmatched_right, [3.0])

    def test_value_near_one_outside_tol_is_kept(self):
        a = Spectrum((3.0, 1.0 + 5e-7), 1e-12)
        b = Spectrum((3.0,), 1e-12)
        result = numkit.spectra_match(a, b, {1.0}, 1e-8)
        self.assertFalse(result.matched)
        self.assertEqual(result.unmatched_left, [1.0 + 5e-7])

    def test_value_near_one_inside_tol_is_dropped(self):
        a = Spectrum((3.0, 1.0 + 5e-9), 1e-12)
        b = Spectrum((3.0,), 1e-12)
        self.assertTrue(numkit.spectra_match(a, b, {1.0}, 1e-8).matched)

    def test_pairing_tolerance_is_absolute(self):
        a = Spectrum((4.0 + 3e-8, 2.0), 1e-12)
        b = Spectrum((4.0, 2.0), 1e-12)
        self.assertFalse(numkit.spectra_match(a, b, {0.0, 1.0}, 1e-8).matched)
        self.assertTrue(numkit.spectra_match(a, b, {0.0, 1.0}, 1e-7).matched)

    def test_worked_examples(self):
        left = Spectrum((5.36, 1.31, 0.0, 0.0), 1e-12)
        right = Spectrum((5.36, 1.31, 1.0, 0.0), 1e-12)
        self.assertTrue(numkit.spectra_match(left, right, {0.0, 1.0}).matched)
        self.assertTrue(numkit.spectra_match(Spectrum((2.0, 4.0), 1e-12), Spectrum((1.0, 2.0, 4.0), 1e-12), {1.0}).matched)
        self.assertFalse(numkit.spectra_match(Spectrum((2.0, 4.0), 1e-12), Spectrum((2.0, 5.0), 1e-12)).matched)

    def test_ignore_must_be_subset(self):
        with self.assertRaises(InvalidInput):
            numkit.spectra_match(Spectrum((1.0,), 1e-12), Spectrum((1.0,), 1e-12), {2.0})


if __name__ == "__main__":
    unittest.main()
