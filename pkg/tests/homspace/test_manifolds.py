# std
import unittest

# lib
import numpy as np

# project
from src.exceptions import ConfigError, SingularityError
from src.homspace import pair
from src.homspace.euclidean import Euclidean
from src.homspace.projective import ProjectiveSpace
from src.homspace.sphere import Sphere2
from src.homspace.sphere_euclidean import Sphere2xR3
from src.homspace.targets import TargetSchedule, manifold_from_name, point_from_config, point_to_config
from src.lie.groups import abelian, se3, so3, sun


class TestManifolds(unittest.TestCase):
    def setUp(self) -> None:
        self.rng = np.random.default_rng(3)
        self.e = np.eye(3)

    def testSphereAction(self):
        quarter_turn = so3().cayley(np.array([0.0, 0.0, 2.0]))
        np.testing.assert_allclose(Sphere2().act(so3(), quarter_turn, self.e[0]), self.e[1], atol=1e-14)

    def testDistances(self):
        self.assertAlmostEqual(Sphere2().distance(self.e[0], self.e[1]), np.sqrt(2.0), places=14)

        cp1 = ProjectiveSpace(1)
        up = np.array([1.0, 0.0], dtype=complex)
        down = np.array([0.0, 1.0], dtype=complex)
        self.assertAlmostEqual(cp1.distance(up, down), np.pi, places=12)

        psi = np.array([0.6, 0.8j])
        self.assertAlmostEqual(cp1.distance(psi, np.exp(0.7j) * psi), 0.0, places=6)

    def testSphereDistanceDerivative(self):
        sphere = Sphere2()
        q1 = self.e[2]
        q2 = sphere.normalize(np.array([0.4, -0.3, 0.5]))
        u = sphere.tangent_project(q1, self.rng.standard_normal(3))
        eps = 1e-6
        numeric = (
            sphere.distance(sphere.normalize(q1 + eps * u), q2) - sphere.distance(sphere.normalize(q1 - eps * u), q2)
        ) / (2.0 * eps)
        self.assertAlmostEqual(sphere.d1_distance(q1, q2) @ u, numeric, places=8)

    def testProjectivePenaltyDerivative(self):
        cp1 = ProjectiveSpace(1)
        q = cp1.normalize(np.array([0.8, 0.3 + 0.2j]))
        target = cp1.normalize(np.array([0.5 - 0.1j, 0.7j]))
        raw = self.rng.standard_normal(2) + 1j * self.rng.standard_normal(2)
        u = cp1.tangent_project(q, raw)
        eps = 1e-6

        def penalty(point):
            return 0.5 * cp1.distance(cp1.normalize(point), target) ** 2

        numeric = (penalty(q + eps * u) - penalty(q - eps * u)) / (2.0 * eps)
        self.assertAlmostEqual(pair(cp1.penalty_gradient(q, target), u), numeric, places=7)

    def testProjectiveCutLocus(self):
        cp1 = ProjectiveSpace(1)
        with self.assertRaises(SingularityError):
            cp1.penalty_gradient(np.array([1.0, 0.0], dtype=complex), np.array([0.0, 1.0], dtype=complex))

    def testMomentumMap(self):
        sphere = Sphere2()
        np.testing.assert_allclose(sphere.momentum_map(so3(), self.e[0], self.e[1]), self.e[2], atol=1e-15)

        q = sphere.normalize(self.rng.standard_normal(3))
        alpha = self.rng.standard_normal(3)
        np.testing.assert_allclose(sphere.momentum_map(so3(), q, alpha), np.cross(q, alpha), atol=1e-14)

    def testIsotropy(self):
        sphere = Sphere2()
        isotropy = sphere.isotropy_basis(so3(), self.e[2])
        self.assertEqual(isotropy.shape, (3, 1))
        self.assertAlmostEqual(abs(isotropy[2, 0]), 1.0, places=12)
        annihilator = sphere.annihilator_basis(so3(), self.e[2])
        self.assertEqual(annihilator.shape, (3, 2))
        np.testing.assert_allclose(annihilator[2], np.zeros(2), atol=1e-14)

        self.assertEqual(ProjectiveSpace(1).annihilator_basis(sun(2), np.array([1.0, 0.0], dtype=complex)).shape[1], 2)
        pose = np.array([0.0, 0.0, 1.0, 0.0, 0.0, 0.0])
        self.assertEqual(Sphere2xR3().annihilator_basis(se3(), pose).shape[1], 5)
        self.assertEqual(Euclidean(2).annihilator_basis(abelian(2), np.zeros(2)).shape[1], 2)

    def testRigidAction(self):
        group = se3()
        g = group.cayley(np.array([0.0, 0.0, 2.0, 1.0, 0.0, 0.0]))
        moved = Sphere2xR3().act(group, g, np.array([1.0, 0.0, 0.0, 1.0, 0.0, 0.0]))
        np.testing.assert_allclose(moved[:3], self.e[1], atol=1e-14)
        np.testing.assert_allclose(moved[3:], g[:3, :3] @ self.e[0] + g[:3, 3], atol=1e-14)

    def testManifoldFromName(self):
        self.assertIsInstance(manifold_from_name("sphere2"), Sphere2)
        self.assertEqual(manifold_from_name("r3").label, "euclidean:3")
        self.assertEqual(manifold_from_name("cpn:2").label, "cpn:2")
        self.assertIsInstance(manifold_from_name("sphere2xr3"), Sphere2xR3)
        for bad in ("torus", "cpn:0", "euclidean:"):
            with self.assertRaises(ConfigError, msg=bad):
                manifold_from_name(bad)

    def testPointsFromConfig(self):
        cp1 = ProjectiveSpace(1)
        point = point_from_config(cp1, [[0.6, 0.0], [0.0, 0.8]])
        np.testing.assert_allclose(point, np.array([0.6, 0.8j]), atol=1e-15)
        np.testing.assert_allclose(point_to_config(cp1, point), [[0.6, 0.0], [0.0, 0.8]], atol=1e-15)
        with self.assertRaises(ConfigError):
            point_from_config(Sphere2(), [1.0, 1.0, 0.0])
        with self.assertRaises(ConfigError):
            point_from_config(Sphere2(), ["a", 0.0, 1.0])

    def testScheduleValidation(self):
        sphere = Sphere2()
        with self.assertRaises(ConfigError):
            TargetSchedule(sphere, self.e[2], ((4, self.e[0]), (2, self.e[1])))
        with self.assertRaises(ConfigError):
            TargetSchedule(sphere, self.e[2], ((0, self.e[0]),))
        with self.assertRaises(ConfigError):
            TargetSchedule(sphere, self.e[2], ((3, np.array([1.0, 1.0, 0.0])),))

        schedule = TargetSchedule(sphere, self.e[2], ((2, self.e[0]), (5, self.e[1])))
        self.assertEqual(schedule.node_indices, [2, 5])
        self.assertEqual(schedule.final_node, 5)
        self.assertTrue(schedule.is_node(2))
        self.assertFalse(schedule.is_node(3))
        self.assertIsNone(schedule.target_at(4))


if __name__ == "__main__":
    unittest.main()
