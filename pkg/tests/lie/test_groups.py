# std
import unittest

# lib
import numpy as np

# project
from src.exceptions import ConfigError, DescriptorMismatchError, SingularityError
from src.lie.groups import abelian, group_from_name, se3, so3, sun


class TestGroups(unittest.TestCase):
    def setUp(self) -> None:
        self.rng = np.random.default_rng(11)
        self.groups = [so3(), se3(), sun(2), sun(3), abelian(2)]

    def testHat(self):
        expected = np.array([[0.0, -3.0, 2.0], [3.0, 0.0, -1.0], [-2.0, 1.0, 0.0]])
        np.testing.assert_allclose(so3().hat([1.0, 2.0, 3.0]), expected)
        with self.assertRaises(DescriptorMismatchError):
            se3().hat([1.0, 2.0, 3.0])

    def testWedgeVee(self):
        for group in self.groups:
            xi = self.rng.standard_normal(group.dim)
            np.testing.assert_allclose(group.vee(group.wedge(xi)), xi, atol=1e-13, err_msg=group.label)

    def testBrackets(self):
        e = np.eye(3)
        np.testing.assert_allclose(so3().ad(e[0], e[1]), e[2], atol=1e-15)

        group = se3()
        rot_z = np.concatenate([e[2], np.zeros(3)])
        trans_x = np.concatenate([np.zeros(3), e[0]])
        np.testing.assert_allclose(group.ad(rot_z, trans_x), np.concatenate([np.zeros(3), e[1]]), atol=1e-15)

        rot_x = np.concatenate([e[0], np.zeros(3)])
        np.testing.assert_allclose(group.ad_star(rot_z, rot_x), np.concatenate([-e[1], np.zeros(3)]), atol=1e-15)

    def testJacobi(self):
        for group in self.groups:
            x, y, z = (self.rng.standard_normal(group.dim) for _ in range(3))
            total = group.ad(x, group.ad(y, z)) + group.ad(y, group.ad(z, x)) + group.ad(z, group.ad(x, y))
            self.assertLess(np.linalg.norm(total), 1e-12, f"Jacobi identity fails on {group.label}")

    def testSu2MatchesSo3(self):
        np.testing.assert_allclose(sun(2).structure_constants, so3().structure_constants, atol=1e-14)

    def testAbelianBracketVanishes(self):
        group = abelian(3)
        self.assertFalse(np.any(np.abs(group.structure_constants) > 1e-15), "abelian bracket should vanish")

    def testCoadjointPairing(self):
        for group in self.groups:
            xi, eta, mu = (self.rng.standard_normal(group.dim) for _ in range(3))
            self.assertAlmostEqual(group.ad_star(xi, mu) @ eta, mu @ group.ad(xi, eta), places=12)

            g = group.cayley(0.5 * self.rng.standard_normal(group.dim))
            self.assertAlmostEqual(group.Ad_star(g, mu) @ eta, mu @ group.Ad(g, eta), places=12)

    def testAdjointOnSo3IsRotation(self):
        group = so3()
        g = group.cayley(np.array([0.3, -0.7, 0.2]))
        v = np.array([1.0, 2.0, -0.5])
        np.testing.assert_allclose(group.Ad(g, v), g @ v, atol=1e-13)
        np.testing.assert_allclose(group.Ad_star(g, v), g.T @ v, atol=1e-13)

    def testCayleyQuarterTurn(self):
        expected = np.array([[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]])
        np.testing.assert_allclose(so3().cayley(np.array([0.0, 0.0, 2.0])), expected, atol=1e-14)

    def testCayleyStaysOnGroup(self):
        for group in (so3(), se3(), sun(2)):
            g = group.cayley(self.rng.standard_normal(group.dim))
            self.assertLess(group.manifold_residual(g), 1e-10, f"Cayley left {group.label}")

    def testSunIsTraceFree(self):
        for n in (2, 3, 4):
            group = sun(n)
            self.assertEqual(group.dim, n * n - 1)
            for generator in group.basis:
                self.assertLess(abs(np.trace(generator)), 1e-14)
                np.testing.assert_allclose(generator.conj().T, -generator, atol=1e-15)

    def testSunProjectRemovesDeterminantPhase(self):
        group = sun(3)
        xi = np.zeros(8)
        xi[7] = 2.0
        g = group.cayley(xi)
        self.assertLess(np.linalg.norm(g.conj().T @ g - np.eye(3)), 1e-12)
        self.assertGreater(abs(np.linalg.det(g) - 1.0), 1e-2)
        self.assertGreater(group.manifold_residual(g), 1e-2)

        projected = group.project(g)
        self.assertLess(abs(np.linalg.det(projected) - 1.0), 1e-12)
        self.assertLess(group.manifold_residual(projected), 1e-12)
        # only a phase was removed
        np.testing.assert_allclose(group.Ad_matrix(projected), group.Ad_matrix(g), atol=1e-12)

    def testSunDtauIsDerivativeOfNormalizedCayley(self):
        group = sun(3)
        eps = 1e-6
        xi = 0.5 * self.rng.standard_normal(group.dim)
        eta = self.rng.standard_normal(group.dim)

        def normalized(x):
            return group.project(group.cayley(x))

        derivative = (normalized(xi + eps * eta) - normalized(xi - eps * eta)) / (2.0 * eps)
        numeric = group.vee(group.inverse(normalized(xi)) @ derivative)
        np.testing.assert_allclose(group.dtau(xi, eta), numeric, atol=1e-8)

    def testCayleyInverse(self):
        for group in self.groups:
            xi = 0.6 * self.rng.standard_normal(group.dim)
            g = group.cayley(xi)
            np.testing.assert_allclose(group.cayley_inv(g), xi, atol=1e-12, err_msg=group.label)
            np.testing.assert_allclose(group.cayley(-xi) @ g, group.identity(), atol=1e-13, err_msg=group.label)

    def testCayleyInverseSingular(self):
        half_turn = np.diag([1.0, -1.0, -1.0])
        with self.assertRaises(SingularityError):
            so3().cayley_inv(half_turn)

    def testDtauIsLeftTrivializedDerivative(self):
        eps = 1e-6
        for group in (so3(), se3(), sun(2)):
            xi = 0.5 * self.rng.standard_normal(group.dim)
            eta = self.rng.standard_normal(group.dim)
            derivative = (group.cayley(xi + eps * eta) - group.cayley(xi - eps * eta)) / (2.0 * eps)
            numeric = group.vee(group.inverse(group.cayley(xi)) @ derivative)
            np.testing.assert_allclose(group.dtau(xi, eta), numeric, atol=1e-8, err_msg=group.label)

    def testDtauIdentities(self):
        for group in self.groups:
            a = 0.4 * self.rng.standard_normal(group.dim)
            eta = self.rng.standard_normal(group.dim)
            np.testing.assert_allclose(group.dtau_inv(a, group.dtau(a, eta)), eta, atol=1e-12)
            np.testing.assert_allclose(
                group.dtau_matrix(-a), group.Ad_matrix(group.cayley(a)) @ group.dtau_matrix(a), atol=1e-12
            )

    def testShapeChecks(self):
        with self.assertRaises(DescriptorMismatchError):
            so3().wedge(np.zeros(6))
        with self.assertRaises(DescriptorMismatchError):
            se3().Ad(np.eye(3), np.zeros(6))

    def testGroupFromName(self):
        self.assertEqual(group_from_name("SO3").label, "so3")
        self.assertEqual(group_from_name("sun:3").dim, 8)
        self.assertEqual(group_from_name("abelian:4").matrix_size, 5)
        for bad in ("so4", "sun:1", "abelian:0", "sun:x"):
            with self.assertRaises(ConfigError, msg=bad):
                group_from_name(bad)


if __name__ == "__main__":
    unittest.main()
