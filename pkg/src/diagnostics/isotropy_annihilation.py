# std
import logging
from typing import Optional

# project
from src.exceptions import DescriptorMismatchError
from src.integrator.momentum import isotropy_residual
from src.integrator.problem import DiscretePath, ProblemSpec
from . import Finding, FindingKind, FindingPriority, PathConditionChecker


class IsotropyAnnihilation(PathConditionChecker):
    """Optimal mu0_k vanishes on the isotropy algebra of g_k Q0"""

    @staticmethod
    def config_name() -> str:
        return "isotropy_annihilation"

    def __init__(self, tolerance: float = 1e-6):
        logging.info("Enabled check for isotropy annihilation of mu0.")
        self._tolerance = tolerance

    def check(self, problem: ProblemSpec, path: DiscretePath) -> Optional[Finding]:
        try:
            worst = isotropy_residual(problem, path)
        except DescriptorMismatchError as ex:
            logging.debug(f"Skipping isotropy check: {ex}")
            return None
        if worst <= self._tolerance:
            return None

        message = f"mu0 pairs with isotropy directions up to {worst:.3e} (allowed {self._tolerance:.1e})"
        logging.warning(message)
        return Finding(FindingKind.SUBSPACE, FindingPriority.NORMAL, self.config_name(), message)
