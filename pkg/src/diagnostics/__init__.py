"""Condition checks run on solved paths.

Each checker inspects one structural property of a discrete path and
reports a Finding when that property does not hold to its tolerance.
"""

# std
from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum
from typing import Optional

# project
from src.integrator.problem import DiscretePath, ProblemSpec


class FindingPriority(Enum):
    """How strongly a finding questions the solution"""

    LOW = -1
    NORMAL = 0
    HIGH = 1


class FindingKind(Enum):
    CERTIFICATE = 0
    CONSERVATION = 1
    SUBSPACE = 2


@dataclass
class Finding:
    kind: FindingKind
    priority: FindingPriority
    check: str
    message: str

    def to_json(self) -> dict:
        return {"kind": self.kind.name, "priority": self.priority.name, "check": self.check, "message": self.message}


class PathConditionChecker(ABC):
    @staticmethod
    @abstractmethod
    def config_name() -> str:
        pass

    @abstractmethod
    def check(self, problem: ProblemSpec, path: DiscretePath) -> Optional[Finding]:
        pass
