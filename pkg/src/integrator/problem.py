# std
from dataclasses import dataclass, field, replace
from typing import Dict, List, Tuple

# lib
import numpy as np

# project
from src.exceptions import ConfigError, DescriptorMismatchError
from src.homspace import ObjectManifold
from src.homspace.targets import TargetSchedule
from src.lie.groups import GroupDescriptor
from src.lie.metric import MetricOperator
from src.util import ActionSide, ReductionSide
from .lagrangians import Lagrangian

DEFAULT_CAYLEY_RADIUS = 1.0


@dataclass(frozen=True, eq=False)
class ProblemSpec:
    """Inexact trajectory-planning problem on a matrix Lie group.

    Time starts at 0 with t_k = k h, and the last target node must be
    the final index N.
    """

    group: GroupDescriptor
    metric: MetricOperator
    lagrangian: Lagrangian
    schedule: TargetSchedule
    sigma: float
    h: float
    N: int
    xi0_initial: np.ndarray
    action_side: ActionSide = ActionSide.LEFT
    reduction_side: ReductionSide = ReductionSide.RIGHT
    cayley_radius: float = DEFAULT_CAYLEY_RADIUS

    def __post_init__(self):
        self.validate()

    @property
    def manifold(self) -> ObjectManifold:
        return self.schedule.manifold

    @property
    def final_time(self) -> float:
        return self.h * self.N

    def validate(self):
        if not self.sigma > 0:
            raise ConfigError(f"Invalid problem - sigma must be positive, got {self.sigma}")
        if not self.h > 0:
            raise ConfigError(f"Invalid problem - h must be positive, got {self.h}")
        if int(self.N) != self.N or self.N < 0:
            raise ConfigError(f"Invalid problem - N must be a non-negative integer, got {self.N}")
        if not self.cayley_radius > 0:
            raise ConfigError(f"Invalid problem - cayley_radius must be positive, got {self.cayley_radius}")
        if self.metric.group != self.group or self.lagrangian.group != self.group:
            raise ConfigError("Invalid problem - metric and lagrangian must live on the problem group")
        if np.shape(self.xi0_initial) != (self.group.dim,):
            raise ConfigError(f"Invalid problem - xi0_initial needs {self.group.dim} entries")
        try:
            self.manifold.require(self.group)
        except DescriptorMismatchError as ex:
            raise ConfigError(f"Invalid problem - {ex}") from ex
        final_node = self.schedule.final_node
        if final_node is not None and final_node != self.N:
            raise ConfigError(f"Invalid problem - last target node {final_node} must equal N = {self.N}")

    def with_sigma(self, sigma: float) -> "ProblemSpec":
        return replace(self, sigma=sigma)


@dataclass(eq=False)
class State:
    g: np.ndarray
    xi0: np.ndarray
    mu0: np.ndarray
    mu1: np.ndarray
    k: int = 0


@dataclass(eq=False)
class DiscretePath:
    """States k = 0..N, the N accelerations xi1_k and the node forces used"""

    states: List[State]
    xi1: List[np.ndarray]
    node_forces: Dict[int, np.ndarray] = field(default_factory=dict)

    @property
    def N(self) -> int:
        return len(self.states) - 1

    @property
    def g(self) -> np.ndarray:
        return np.array([s.g for s in self.states])

    @property
    def xi0(self) -> np.ndarray:
        return np.array([s.xi0 for s in self.states])

    @property
    def mu0(self) -> np.ndarray:
        return np.array([s.mu0 for s in self.states])

    @property
    def mu1(self) -> np.ndarray:
        return np.array([s.mu1 for s in self.states])


def to_internal_problem(problem: ProblemSpec) -> ProblemSpec:
    """Map a left-reduction problem to the right-reduction form.

    With G = g^-1 the reduced velocity, momenta and Lagrangian argument
    change sign and the action changes side. Right-reduction problems
    are returned unchanged.
    """
    if problem.reduction_side is ReductionSide.RIGHT:
        return problem
    flipped = ActionSide.RIGHT if problem.action_side is ActionSide.LEFT else ActionSide.LEFT
    return replace(
        problem,
        lagrangian=problem.lagrangian.reflected(),
        xi0_initial=-np.asarray(problem.xi0_initial, dtype=float),
        action_side=flipped,
        reduction_side=ReductionSide.RIGHT,
    )


def to_internal_momenta(problem: ProblemSpec, mu0: np.ndarray, mu1: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Initial momenta in the frame of to_internal_problem; the map is its own inverse"""
    mu0 = np.asarray(mu0, dtype=float)
    mu1 = np.asarray(mu1, dtype=float)
    if problem.reduction_side is ReductionSide.RIGHT:
        return mu0, mu1
    return -mu0, -mu1


def convert_path(problem: ProblemSpec, path: DiscretePath) -> DiscretePath:
    """Switch a path between the user frame and the internal frame of problem.

    Identity for right-reduction problems, and its own inverse otherwise.
    """
    if problem.reduction_side is ReductionSide.RIGHT:
        return path
    group = problem.group
    states = [State(group.inverse(s.g), -s.xi0, -s.mu0, -s.mu1, s.k) for s in path.states]
    return DiscretePath(
        states=states,
        xi1=[-x for x in path.xi1],
        node_forces={k: -f for k, f in path.node_forces.items()},
    )


def internal_view(problem: ProblemSpec, path: DiscretePath) -> Tuple[ProblemSpec, DiscretePath]:
    return to_internal_problem(problem), convert_path(problem, path)
