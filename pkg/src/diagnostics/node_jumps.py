# std
import logging
from typing import Optional

# project
from src.integrator.momentum import momentum_report
from src.integrator.problem import DiscretePath, ProblemSpec
from . import Finding, FindingKind, FindingPriority, PathConditionChecker


class NodeJumps(PathConditionChecker):
    """At node indices the spatial momentum jumps by exactly Ad*_g Delta"""

    @staticmethod
    def config_name() -> str:
        return "node_jumps"

    def __init__(self, tolerance: float = 1e-12):
        logging.info("Enabled check for momentum jumps at target nodes.")
        self._tolerance = tolerance

    def check(self, problem: ProblemSpec, path: DiscretePath) -> Optional[Finding]:
        rows = momentum_report(problem, path)
        scale = 1.0 + max(row.mu0_norm for row in rows)
        worst = max((row.jump_norm for row in rows if row.is_node and row.k < path.N), default=0.0)
        if worst <= self._tolerance * scale:
            return None

        message = f"Momentum jump at a node misses the node impulse by {worst:.3e}"
        logging.warning(message)
        return Finding(FindingKind.CONSERVATION, FindingPriority.HIGH, self.config_name(), message)
