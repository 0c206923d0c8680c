# std
from typing import Optional, Sequence

# lib
import numpy as np

# project
from src.homspace.euclidean import Euclidean
from src.homspace.projective import ProjectiveSpace
from src.homspace.sphere import Sphere2
from src.homspace.sphere_euclidean import Sphere2xR3
from src.homspace.targets import TargetSchedule
from src.integrator.lagrangians import CubicReduced, SquaredVelocity
from src.integrator.problem import ProblemSpec
from src.lie.groups import abelian, se3, so3, sun
from src.lie.metric import MetricOperator, trace_metric
from src.util import ActionSide, ReductionSide


def random_unit(rng: np.random.Generator, size: int) -> np.ndarray:
    v = rng.standard_normal(size)
    return v / np.linalg.norm(v)


def random_state(rng: np.random.Generator, size: int) -> np.ndarray:
    v = rng.standard_normal(size) + 1j * rng.standard_normal(size)
    return v / np.linalg.norm(v)


def random_rotation(rng: np.random.Generator) -> np.ndarray:
    group = so3()
    return group.cayley(0.8 * rng.standard_normal(3))


class DummyProblems:
    @staticmethod
    def sphere(
        rng: np.random.Generator,
        nodes: Sequence[int] = (20, 40),
        N: int = 40,
        h: float = 0.025,
        sigma: float = 0.5,
        action_side: ActionSide = ActionSide.LEFT,
        reduction_side: ReductionSide = ReductionSide.RIGHT,
        gamma: Optional[np.ndarray] = None,
    ) -> ProblemSpec:
        group = so3()
        metric = MetricOperator(group, gamma)
        manifold = Sphere2()
        q0 = np.array([0.0, 0.0, 1.0])
        # keep targets in the upper hemisphere, away from the antipode of Q0
        entries = []
        for k in nodes:
            target = random_unit(rng, 3)
            target[2] = abs(target[2]) + 0.3
            entries.append((k, target / np.linalg.norm(target)))
        return ProblemSpec(
            group=group,
            metric=metric,
            lagrangian=SquaredVelocity(metric),
            schedule=TargetSchedule(manifold, q0, tuple(entries)),
            sigma=sigma,
            h=h,
            N=N,
            xi0_initial=0.3 * rng.standard_normal(3),
            action_side=action_side,
            reduction_side=reduction_side,
        )

    @staticmethod
    def qubit(
        rng: np.random.Generator, nodes: Sequence[int] = (10, 20), N: int = 20, h: float = 0.05, n: int = 2
    ) -> ProblemSpec:
        """SU(n) steering a state in CP^(n-1), a qubit for n = 2"""
        group = sun(n)
        metric = trace_metric(group)
        manifold = ProjectiveSpace(n - 1)
        q0 = np.zeros(n, dtype=complex)
        q0[0] = 1.0
        entries = []
        for k in nodes:
            target = random_state(rng, n)
            # stay clear of the state orthogonal to Q0
            target[0] = target[0] + 0.5
            entries.append((k, target / np.linalg.norm(target)))
        return ProblemSpec(
            group=group,
            metric=metric,
            lagrangian=SquaredVelocity(metric),
            schedule=TargetSchedule(manifold, q0, tuple(entries)),
            sigma=0.5,
            h=h,
            N=N,
            xi0_initial=0.3 * rng.standard_normal(group.dim),
        )

    @staticmethod
    def rigid(
        rng: np.random.Generator,
        cubic: bool = False,
        reduction_side: ReductionSide = ReductionSide.RIGHT,
        action_side: ActionSide = ActionSide.LEFT,
    ) -> ProblemSpec:
        group = se3()
        metric = MetricOperator(group, np.diag([1.0, 1.0, 0.5, 2.0, 2.0, 1.0]))
        manifold = Sphere2xR3()
        q0 = np.array([0.0, 0.0, 1.0, 0.0, 0.0, 0.0])
        entries = []
        for k in (10, 20):
            direction = random_unit(rng, 3)
            direction[2] = abs(direction[2]) + 0.3
            entries.append((k, np.concatenate([direction / np.linalg.norm(direction), 0.3 * rng.standard_normal(3)])))
        offset = np.array([0.0, 0.0, 2.0 * np.pi, 0.0, 0.0, 1.0])
        lagrangian = CubicReduced(metric, sign=-1, offset=offset) if cubic else SquaredVelocity(metric)
        return ProblemSpec(
            group=group,
            metric=metric,
            lagrangian=lagrangian,
            schedule=TargetSchedule(manifold, q0, tuple(entries)),
            sigma=0.5,
            h=0.02,
            N=20,
            xi0_initial=0.2 * rng.standard_normal(6),
            action_side=action_side,
            reduction_side=reduction_side,
        )

    @staticmethod
    def line(
        nodes: Sequence[int] = (),
        targets: Sequence[float] = (),
        N: int = 4,
        h: float = 0.5,
        sigma: float = 1.0,
        xi0: float = 0.0,
    ) -> ProblemSpec:
        """The abelian group R^1 translating the real line"""
        group = abelian(1)
        metric = MetricOperator(group)
        entries = tuple((k, np.array([float(t)])) for k, t in zip(nodes, targets))
        return ProblemSpec(
            group=group,
            metric=metric,
            lagrangian=SquaredVelocity(metric),
            schedule=TargetSchedule(Euclidean(1), np.array([0.0]), entries),
            sigma=sigma,
            h=h,
            N=N,
            xi0_initial=np.array([xi0]),
            cayley_radius=1e6,
        )
