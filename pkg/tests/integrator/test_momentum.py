# std
import unittest

# lib
import numpy as np

# project
from src.exceptions import DescriptorMismatchError
from src.integrator.flow import integrate
from src.integrator.momentum import (
    isotropy_residual,
    momentum_report,
    reconstruct_mu0,
    reconstruction_error,
    spatial_momentum,
    terminal_residuals,
)
from src.optimizer.descent import OptimizerConfig, descend
from src.util import ActionSide, ReductionSide
from tests.dummy_problems import DummyProblems

# optimum of the two-step line problem below, worked out by hand
LINE_OPTIMUM = (np.array([0.15]), np.array([0.3]))


class TestMomentum(unittest.TestCase):
    def setUp(self) -> None:
        self.rng = np.random.default_rng(99)
        self.mu0 = 0.4 * self.rng.standard_normal(3)
        self.mu1 = 0.4 * self.rng.standard_normal(3)

    def testNoetherBetweenNodes(self):
        for action_side in ActionSide:
            for reduction_side in ReductionSide:
                problem = DummyProblems.sphere(
                    np.random.default_rng(1), nodes=(13, 27, 40), action_side=action_side, reduction_side=reduction_side
                )
                path = integrate(problem, self.mu0, self.mu1)
                rows = momentum_report(problem, path)
                self.assertEqual(len(rows), problem.N + 1)
                scale = 1.0 + max(row.mu0_norm for row in rows)
                label = f"{action_side.value} action, {reduction_side.value} reduction"

                for row in rows[:-1]:
                    self.assertLess(row.jump_norm, 1e-12 * scale, f"jump residual at k={row.k}, {label}")
                    if not row.is_node:
                        drift = np.linalg.norm(rows[row.k + 1].J - row.J)
                        self.assertLess(drift, 1e-12 * scale, f"J drifts at k={row.k}, {label}")
                self.assertTrue(np.isnan(rows[-1].jump_norm))
                self.assertGreater(np.linalg.norm(rows[14].J - rows[13].J), 1e-6, f"no jump at a node, {label}")

    def testSpatialMomentum(self):
        problem = DummyProblems.sphere(self.rng)
        path = integrate(problem, self.mu0, self.mu1)
        state = path.states[7]
        np.testing.assert_allclose(spatial_momentum(problem.group, state), state.g.T @ state.mu0, atol=1e-14)

    def testCertificatesAtLineOptimum(self):
        problem = DummyProblems.line(nodes=(2,), targets=(0.5,), N=2, h=1.0, sigma=1.0, xi0=0.1)
        path = integrate(problem, *LINE_OPTIMUM)
        mu0_residual, mu1_residual = terminal_residuals(problem, path)
        self.assertLess(mu0_residual, 1e-12)
        self.assertLess(mu1_residual, 1e-12)
        self.assertLess(reconstruction_error(problem, path), 1e-12)
        for reconstructed in reconstruct_mu0(problem, path):
            np.testing.assert_allclose(reconstructed, [0.15], atol=1e-12)

    def testCertificatesAtSphereOptimum(self):
        problem = DummyProblems.sphere(np.random.default_rng(5), nodes=(10, 20), N=20, h=0.05)
        result = descend(problem, OptimizerConfig(max_iters=5000, grad_tol=1e-9), np.zeros(3), np.zeros(3))
        self.assertTrue(result.converged, result.message)

        mu0_residual, mu1_residual = terminal_residuals(problem, result.path)
        self.assertLess(mu0_residual, 1e-6)
        self.assertLess(mu1_residual, 1e-6)
        self.assertLess(isotropy_residual(problem, result.path), 1e-6)
        self.assertLess(reconstruction_error(problem, result.path), 1e-6)
        # the zero seed fails them
        start = integrate(problem, np.zeros(3), np.zeros(3))
        self.assertGreater(max(terminal_residuals(problem, start)), 1e-3)

    def testCertificatesAwayFromOptimum(self):
        problem = DummyProblems.line(nodes=(2,), targets=(0.5,), N=2, h=1.0, sigma=1.0, xi0=0.1)
        path = integrate(problem, np.array([0.0]), np.array([0.0]))
        mu0_residual, mu1_residual = terminal_residuals(problem, path)
        # x_2 = 0.2, so Delta_2 = -0.3 and mu0_2 = 0
        self.assertAlmostEqual(mu0_residual, 0.3, places=12)
        self.assertAlmostEqual(mu1_residual, 0.0, places=12)
        self.assertAlmostEqual(reconstruction_error(problem, path), 0.3, places=12)

    def testIsotropyResidual(self):
        problem = DummyProblems.sphere(self.rng)
        along_axis = np.array([0.0, 0.0, 0.5])
        path = integrate(problem, along_axis, np.zeros(3))
        self.assertGreater(isotropy_residual(problem, path), 0.1)

        right = DummyProblems.sphere(self.rng, action_side=ActionSide.RIGHT)
        with self.assertRaises(DescriptorMismatchError):
            isotropy_residual(right, integrate(right, self.mu0, self.mu1))


if __name__ == "__main__":
    unittest.main()
