# std
import logging
from typing import List, Optional, Type

# project
from src.integrator.problem import DiscretePath, ProblemSpec
from . import Finding, PathConditionChecker
from .isotropy_annihilation import IsotropyAnnihilation
from .momentum_reconstruction import MomentumReconstruction
from .node_jumps import NodeJumps
from .noether_conservation import NoetherConservation
from .terminal_certificates import TerminalCertificates


def _check_enabled(config: dict, checker_name: str) -> bool:
    """Checks without a config entry stay enabled"""
    entry = config.get(checker_name)
    if entry is None:
        return True
    return bool(entry.get("enable", True))


class PathInspector:
    """Runs every enabled condition checker over a path and collects the findings"""

    def __init__(self, config: Optional[dict] = None):
        config = config or {}
        available_checkers: List[Type[PathConditionChecker]] = [
            NoetherConservation,
            NodeJumps,
            TerminalCertificates,
            IsotropyAnnihilation,
            MomentumReconstruction,
        ]
        self._cond_checkers: List[PathConditionChecker] = []
        for checker in available_checkers:
            if _check_enabled(config, checker.config_name()):
                self._cond_checkers.append(checker())
            else:
                logging.info(f"Disabled check: {checker.config_name()}")

    @property
    def checker_names(self) -> List[str]:
        return [checker.config_name() for checker in self._cond_checkers]

    def inspect(self, problem: ProblemSpec, path: DiscretePath) -> List[Finding]:
        findings = []
        for checker in self._cond_checkers:
            finding = checker.check(problem, path)
            if finding:
                findings.append(finding)
        logging.info(f"Path inspection: {len(findings)} findings from {len(self._cond_checkers)} checks")
        return findings
