# std
import logging
from typing import Optional

# project
from src.integrator.momentum import terminal_residuals
from src.integrator.problem import DiscretePath, ProblemSpec
from . import Finding, FindingKind, FindingPriority, PathConditionChecker


class TerminalCertificates(PathConditionChecker):
    """mu0_N + Delta_N and mu1_N vanish at critical points of the discrete action.

    Non-zero values mean the optimizer stopped away from a minimum, which
    is expected for unconverged runs, so this is a normal priority finding.
    """

    @staticmethod
    def config_name() -> str:
        return "terminal_certificates"

    def __init__(self, tolerance: float = 1e-6):
        logging.info("Enabled check for terminal optimality conditions.")
        self._tolerance = tolerance

    def check(self, problem: ProblemSpec, path: DiscretePath) -> Optional[Finding]:
        mu0_residual, mu1_residual = terminal_residuals(problem, path)
        if max(mu0_residual, mu1_residual) <= self._tolerance:
            return None

        message = (
            f"Terminal conditions not met: |mu0_N + Delta_N| = {mu0_residual:.3e}, "
            f"|mu1_N| = {mu1_residual:.3e} (allowed {self._tolerance:.1e})"
        )
        logging.warning(message)
        return Finding(FindingKind.CERTIFICATE, FindingPriority.NORMAL, self.config_name(), message)
