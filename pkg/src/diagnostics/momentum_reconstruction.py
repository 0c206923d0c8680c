# std
import logging
from typing import Optional

# project
from src.integrator.momentum import reconstruction_error
from src.integrator.problem import DiscretePath, ProblemSpec
from . import Finding, FindingKind, FindingPriority, PathConditionChecker


class MomentumReconstruction(PathConditionChecker):
    """On optimal paths mu0_k is the transported sum of the future node impulses"""

    @staticmethod
    def config_name() -> str:
        return "momentum_reconstruction"

    def __init__(self, tolerance: float = 1e-8):
        logging.info("Enabled check for mu0 reconstruction from node impulses.")
        self._tolerance = tolerance

    def check(self, problem: ProblemSpec, path: DiscretePath) -> Optional[Finding]:
        error = reconstruction_error(problem, path)
        if error <= self._tolerance:
            return None

        message = f"mu0 differs from its node-impulse reconstruction by {error:.3e}"
        logging.warning(message)
        return Finding(FindingKind.CERTIFICATE, FindingPriority.NORMAL, self.config_name(), message)
