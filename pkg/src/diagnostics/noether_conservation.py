# std
import logging
from typing import Optional

# lib
import numpy as np

# project
from src.integrator.momentum import momentum_report
from src.integrator.problem import DiscretePath, ProblemSpec
from . import Finding, FindingKind, FindingPriority, PathConditionChecker


class NoetherConservation(PathConditionChecker):
    """Ad*_g mu0 must not change across steps that carry no node impulse.

    A failure here points at the integrator, not at the optimizer.
    """

    @staticmethod
    def config_name() -> str:
        return "noether_conservation"

    def __init__(self, tolerance: float = 1e-12):
        logging.info("Enabled check for momentum conservation between nodes.")
        self._tolerance = tolerance

    def check(self, problem: ProblemSpec, path: DiscretePath) -> Optional[Finding]:
        rows = momentum_report(problem, path)
        scale = 1.0 + max(row.mu0_norm for row in rows)
        worst = max(
            (float(np.linalg.norm(rows[k + 1].J - rows[k].J)) for k in range(path.N) if not rows[k].is_node),
            default=0.0,
        )
        if worst <= self._tolerance * scale:
            return None

        message = f"Spatial momentum drifts by {worst:.3e} between nodes (allowed {self._tolerance * scale:.3e})"
        logging.warning(message)
        return Finding(FindingKind.CONSERVATION, FindingPriority.HIGH, self.config_name(), message)
