import unittest

import numpy as np

from src.exceptions import AlgebraViolation
from src.models import BridgeMatrices, HamiltonianBlock, KSigmaForms, SymMatrix
from src.services import fixtures, graphcycles, oblique, susy


def _bridge(d) -> tuple[BridgeMatrices, KSigmaForms]:
    d = np.array(d, dtype=float)
    n1, n0 = d.shape
    forms = KSigmaForms(
        K0=SymMatrix(np.eye(n0) + d.T @ d),
        K1=SymMatrix(np.eye(n1) + 4 * d @ d.T),
        Sigma0=SymMatrix(np.eye(n0) + d.T @ d),
        Sigma1=SymMatrix(np.eye(n1) + d @ d.T),
    )
    return BridgeMatrices(B=d.T, D=d, r=int(np.linalg.matrix_rank(d))), forms


class TestAlgebra(unittest.TestCase):
    def test_residuals_vanish(self):
        q = np.array([[0.0, 0.0], [2.0, 0.0]])
        residuals = susy.algebra_residuals(np.diag([4.0, 4.0]), q)
        self.assertEqual(set(residuals), {"[H,Q]", "[H,Qt]", "{Q,Q}", "{Qt,Qt}", "{Q,Qt}-H", "Q+^2-H", "Q-^2-H"})
        self.assertEqual(max(residuals.values()), 0.0)

    def test_pair_from_bridge(self):
        bridge, forms = _bridge([[1.0, 0.0], [0.0, 2.0], [0.0, 0.0]])
        pair = susy.build_susy(bridge, forms)
        self.assertEqual(pair.hamiltonian.dim, 5)
        self.assertLessEqual(max(pair.residuals.values()), 1e-10)
        report = susy.susy_report(pair, bridge.r)
        self.assertTrue(report.passed)
        self.assertEqual(report.ground_state_dim, 1)

    def test_wrong_block_breaks_algebra(self):
        bridge, forms = _bridge([[1.0]])
        with self.assertRaises(AlgebraViolation) as ctx:
            susy.build_susy(bridge, forms, HamiltonianBlock.k1)
        self.assertGreater(ctx.exception.residual, 0.5)
        pair = susy.build_susy(bridge, forms, HamiltonianBlock.k1, strict=False)
        self.assertEqual(susy.ground_states(pair).shape[1], 0)
        self.assertFalse(susy.susy_report(pair, bridge.r).passed)

    def test_block_size_mismatch(self):
        bridge, forms = _bridge([[1.0], [1.0]])
        pair = susy.build_susy(bridge, forms, HamiltonianBlock.k1, strict=False)
        self.assertEqual(pair.residuals, {"shape": float("inf")})
        with self.assertRaises(AlgebraViolation):
            susy.build_susy(bridge, forms, HamiltonianBlock.k1)

    def test_null_bridge_keeps_every_state(self):
        bridge, forms = _bridge(np.zeros((2, 1)))
        pair = susy.build_susy(bridge, forms)
        self.assertEqual(susy.ground_states(pair).shape[1], 3)


class TestGroundStates(unittest.TestCase):
    def test_projection_example(self):
        p0, p1, g = fixtures.projection_example()
        pair = oblique.validate_projection_pair(p0, p1)
        space = oblique.metric_space(g)
        blocks = oblique.metric_blocks(oblique.natural_basis(pair, space), space)
        forms = oblique.k_sigma_forms(blocks)
        bridge = oblique.bridge_matrices(blocks, forms)
        report = susy.susy_report(susy.build_susy(bridge, forms), bridge.r)
        self.assertTrue(report.algebra_ok)
        self.assertEqual(report.ground_state_dim, 0)

    def test_graph_example(self):
        g = fixtures.graph_example()
        basis = graphcycles.cycle_cocycle_basis(g, graphcycles.spanning_tree(g))
        space = graphcycles.graph_space(g)
        blocks = oblique.metric_blocks(graphcycles.graph_basis(basis), space)
        forms = oblique.k_sigma_forms(blocks)
        bridge = oblique.bridge_matrices(blocks, forms)
        report = susy.susy_report(susy.build_susy(bridge, forms), bridge.r)
        self.assertTrue(report.passed)
        self.assertEqual(report.ground_state_dim, 1)
        positive = sorted(v for v in report.hamiltonian_spectrum if v > 1e-9)
        np.testing.assert_allclose(positive, [1.0, 1.0, 3.0, 3.0], atol=1e-9)


if __name__ == "__main__":
    unittest.main()
