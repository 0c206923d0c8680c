# std
import unittest
from dataclasses import replace

# lib
import numpy as np

# project
from src.diagnostics import FindingKind, FindingPriority
from src.diagnostics.isotropy_annihilation import IsotropyAnnihilation
from src.diagnostics.noether_conservation import NoetherConservation
from src.diagnostics.path_inspector import PathInspector
from src.homspace.targets import TargetSchedule
from src.integrator.flow import integrate
from src.util import ActionSide, ReductionSide
from tests.dummy_problems import DummyProblems


class TestPathInspector(unittest.TestCase):
    def setUp(self) -> None:
        self.rng = np.random.default_rng(123)
        self.problem = DummyProblems.sphere(self.rng, nodes=(10, 20, 40))
        self.path = integrate(self.problem, np.array([0.3, -0.2, 0.7]), np.array([0.1, 0.4, -0.2]))

    def testAllChecksEnabledByDefault(self):
        inspector = PathInspector()
        self.assertEqual(
            inspector.checker_names,
            [
                "noether_conservation",
                "node_jumps",
                "terminal_certificates",
                "isotropy_annihilation",
                "momentum_reconstruction",
            ],
        )

    def testDisable(self):
        inspector = PathInspector({"noether_conservation": {"enable": False}, "node_jumps": {"enable": True}})
        self.assertNotIn("noether_conservation", inspector.checker_names)
        self.assertIn("node_jumps", inspector.checker_names)

    def testIntegratedPathAwayFromOptimum(self):
        findings = PathInspector().inspect(self.problem, self.path)
        checks = {finding.check: finding for finding in findings}

        # the integrator itself is exact, only the optimality checks fire
        self.assertNotIn("noether_conservation", checks)
        self.assertNotIn("node_jumps", checks)
        self.assertEqual(checks["terminal_certificates"].priority, FindingPriority.NORMAL)
        self.assertEqual(checks["terminal_certificates"].kind, FindingKind.CERTIFICATE)
        self.assertEqual(checks["isotropy_annihilation"].kind, FindingKind.SUBSPACE)
        self.assertIn("momentum_reconstruction", checks)

        payload = checks["terminal_certificates"].to_json()
        self.assertEqual(payload["kind"], "CERTIFICATE")
        self.assertEqual(payload["priority"], "NORMAL")
        self.assertEqual(payload["check"], "terminal_certificates")

    def testCorruptedMomentum(self):
        self.path.states[5].mu0 = self.path.states[5].mu0 + np.array([0.0, 1e-3, 0.0])
        finding = NoetherConservation().check(self.problem, self.path)
        self.assertIsNotNone(finding)
        self.assertEqual(finding.priority, FindingPriority.HIGH)
        self.assertEqual(finding.kind, FindingKind.CONSERVATION)

    def testIsotropySkippedForInternalRightAction(self):
        problem = DummyProblems.sphere(self.rng, action_side=ActionSide.LEFT, reduction_side=ReductionSide.LEFT)
        path = integrate(problem, np.array([0.3, -0.2, 0.7]), np.zeros(3))
        self.assertIsNone(IsotropyAnnihilation().check(problem, path))

    def testOptimalRestPath(self):
        initial = self.problem.schedule.initial
        schedule = TargetSchedule(self.problem.manifold, initial, ((20, initial), (40, initial)))
        at_rest = replace(self.problem, schedule=schedule, xi0_initial=np.zeros(3))
        path = integrate(at_rest, np.zeros(3), np.zeros(3))
        self.assertEqual(PathInspector().inspect(at_rest, path), [])


if __name__ == "__main__":
    unittest.main()
