# std
import unittest

# lib
import numpy as np

# project
from src.exceptions import ConfigError
from src.homspace.projective import ProjectiveSpace
from src.homspace.sphere import Sphere2
from src.homspace.sphere_euclidean import Sphere2xR3
from src.homspace.targets import TargetSchedule, node_force, node_penalty, observed_point, script_a
from src.lie.groups import se3, so3, sun
from src.util import ActionSide


def directional(func, eps: float = 1e-6) -> float:
    return (func(eps) - func(-eps)) / (2.0 * eps)


class TestTargets(unittest.TestCase):
    def setUp(self) -> None:
        self.rng = np.random.default_rng(17)
        self.e = np.eye(3)
        self.cases = [
            (so3(), TargetSchedule(Sphere2(), self.e[2], ((1, Sphere2().normalize(np.array([0.3, 0.5, 0.6]))),))),
            (
                sun(2),
                TargetSchedule(
                    ProjectiveSpace(1),
                    np.array([1.0, 0.0], dtype=complex),
                    ((1, ProjectiveSpace(1).normalize(np.array([0.7, 0.2 + 0.4j]))),),
                ),
            ),
            (
                se3(),
                TargetSchedule(
                    Sphere2xR3(),
                    np.array([0.0, 0.0, 1.0, 0.0, 0.0, 0.0]),
                    ((1, np.array([0.6, 0.0, 0.8, 0.2, -0.1, 0.4])),),
                ),
            ),
        ]

    def testNodeForceExample(self):
        schedule = TargetSchedule(Sphere2(), self.e[2], ((1, self.e[0]),))
        group = so3()
        g = group.identity()
        self.assertAlmostEqual(node_penalty(group, 1, g, schedule, 1.0, ActionSide.LEFT), 1.0, places=14)
        force = node_force(group, 1, g, schedule, 1.0, ActionSide.LEFT)
        np.testing.assert_allclose(force, -self.e[1], atol=1e-15)

    def testNodeForceAwayFromNodes(self):
        schedule = TargetSchedule(Sphere2(), self.e[2], ((2, self.e[0]),))
        force = node_force(so3(), 1, so3().identity(), schedule, 0.5, ActionSide.LEFT)
        np.testing.assert_array_equal(force, np.zeros(3))
        with self.assertRaises(ConfigError):
            node_force(so3(), 2, so3().identity(), schedule, 0.0, ActionSide.LEFT)

    def testRightActionObservesInverse(self):
        group = so3()
        schedule = TargetSchedule(Sphere2(), self.e[2], ((1, self.e[0]),))
        g = group.cayley(np.array([0.2, 0.4, -0.1]))
        np.testing.assert_allclose(observed_point(group, g, schedule, ActionSide.RIGHT), g.T @ self.e[2], atol=1e-14)

    def testNodeForceIsPenaltyDerivative(self):
        sigma = 0.7
        for side in ActionSide:
            for group, schedule in self.cases:
                g = group.cayley(0.4 * self.rng.standard_normal(group.dim))
                eta = self.rng.standard_normal(group.dim)

                def penalty(eps):
                    moved = group.cayley(eps * eta) @ g
                    return node_penalty(group, 1, moved, schedule, sigma, side)

                force = node_force(group, 1, g, schedule, sigma, side)
                self.assertAlmostEqual(force @ eta, directional(penalty), places=7, msg=f"{group.label} {side}")

    def testScriptAIsForceDerivative(self):
        sigma = 0.9
        for side in ActionSide:
            for group, schedule in self.cases:
                g = group.cayley(0.4 * self.rng.standard_normal(group.dim))
                eta = self.rng.standard_normal(group.dim)
                rho = self.rng.standard_normal(group.dim)

                def pairing(eps):
                    moved = group.cayley(eps * eta) @ g
                    return node_force(group, 1, moved, schedule, sigma, side) @ rho

                curvature = script_a(group, 1, g, rho, schedule, sigma, side)
                self.assertAlmostEqual(curvature @ eta, directional(pairing), places=6, msg=f"{group.label} {side}")


if __name__ == "__main__":
    unittest.main()
