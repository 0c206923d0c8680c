# std
import logging
import re
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

# lib
import numpy as np

# project
from src.exceptions import ConfigError
from src.lie.groups import GroupDescriptor
from src.util import ActionSide
from . import ObjectManifold, pair
from .euclidean import Euclidean
from .projective import ProjectiveSpace
from .sphere import Sphere2
from .sphere_euclidean import Sphere2xR3

# manifold constraints are checked to this tolerance when points are loaded
POINT_TOLERANCE = 1e-10


def manifold_from_name(name: str) -> ObjectManifold:
    """sphere2, r3, euclidean:<m>, sphere2xr3 or cpn:<n>"""
    key = str(name).strip().lower()
    if key == Sphere2.config_name():
        return Sphere2()
    if key == Sphere2xR3.config_name():
        return Sphere2xR3()
    if key == "r3":
        return Euclidean(3)
    match = re.fullmatch(r"(euclidean|cpn):(\d+)", key)
    if match and int(match.group(2)) > 0:
        if match.group(1) == "euclidean":
            return Euclidean(int(match.group(2)))
        return ProjectiveSpace(int(match.group(2)))

    logging.error(f"Unknown object manifold in config: {name}")
    raise ConfigError(f"Invalid config - unknown manifold {name}")


def point_from_config(manifold: ObjectManifold, raw: Sequence) -> np.ndarray:
    """Parse a point; complex coordinates are given as [re, im] pairs"""
    try:
        if manifold.is_complex:
            point = np.array([complex(float(re), float(im)) for re, im in raw])
        else:
            point = np.array([float(x) for x in raw])
    except (TypeError, ValueError) as ex:
        raise ConfigError(f"Invalid config - cannot parse point {raw} on {manifold.label}") from ex

    if manifold.residual(point) > POINT_TOLERANCE:
        raise ConfigError(f"Invalid config - point {raw} is not on {manifold.label}")
    return manifold.normalize(point)


def point_to_config(manifold: ObjectManifold, q: np.ndarray) -> list:
    if manifold.is_complex:
        return [[float(z.real), float(z.imag)] for z in q]
    return [float(x) for x in q]


@dataclass(frozen=True, eq=False)
class TargetSchedule:
    """Initial point Q0 and the (node index, target) pairs"""

    manifold: ObjectManifold
    initial: np.ndarray
    entries: Tuple[Tuple[int, np.ndarray], ...]

    def __post_init__(self):
        nodes = [k for k, _ in self.entries]
        if any(k <= 0 for k in nodes):
            raise ConfigError(f"Invalid targets - node indices must be positive, got {nodes}")
        if any(b <= a for a, b in zip(nodes, nodes[1:])):
            raise ConfigError(f"Invalid targets - node indices must be strictly increasing, got {nodes}")
        for point in [self.initial] + [t for _, t in self.entries]:
            if self.manifold.residual(point) > POINT_TOLERANCE:
                raise ConfigError(f"Invalid targets - a point is not on {self.manifold.label}")

    @property
    def node_indices(self) -> List[int]:
        return [k for k, _ in self.entries]

    @property
    def final_node(self) -> Optional[int]:
        return self.entries[-1][0] if self.entries else None

    def target_at(self, k: int) -> Optional[np.ndarray]:
        for node, target in self.entries:
            if node == k:
                return target
        return None

    def is_node(self, k: int) -> bool:
        return self.target_at(k) is not None


def observed_point(
    group: GroupDescriptor, g: np.ndarray, schedule: TargetSchedule, action_side: ActionSide
) -> np.ndarray:
    """g Q0 for the left action, g^-1 Q0 for the right one"""
    manifold = schedule.manifold
    if action_side is ActionSide.LEFT:
        return manifold.act(group, g, schedule.initial)
    return manifold.act(group, group.inverse(g), schedule.initial)


def node_penalty(
    group: GroupDescriptor, k: int, g: np.ndarray, schedule: TargetSchedule, sigma: float, action_side: ActionSide
) -> float:
    target = schedule.target_at(k)
    if target is None:
        return 0.0
    q = observed_point(group, g, schedule, action_side)
    return 0.5 * schedule.manifold.distance(q, target) ** 2 / sigma**2


def node_force(
    group: GroupDescriptor, k: int, g: np.ndarray, schedule: TargetSchedule, sigma: float, action_side: ActionSide
) -> np.ndarray:
    """Derivative of the node penalty along g -> exp(eps eta) g, as a dual vector.

    Zero away from node indices. For the left action this is
    J(d d1d) / sigma^2 at g Q0; for the right action the covector at
    g^-1 Q0 is transported by -Ad*_{g^-1}.
    """
    if sigma <= 0:
        raise ConfigError(f"Invalid problem - sigma must be positive, got {sigma}")
    target = schedule.target_at(k)
    if target is None:
        return np.zeros(group.dim)

    manifold = schedule.manifold
    if action_side is ActionSide.LEFT:
        q = manifold.act(group, g, schedule.initial)
        return manifold.momentum_map(group, q, manifold.penalty_gradient(q, target)) / sigma**2

    g_inv = group.inverse(g)
    q = manifold.act(group, g_inv, schedule.initial)
    c = manifold.penalty_gradient(q, target)
    return -np.array([pair(c, manifold.apply(g_inv @ e, schedule.initial)) for e in group.basis]) / sigma**2


def script_a(
    group: GroupDescriptor,
    k: int,
    g: np.ndarray,
    rho: np.ndarray,
    schedule: TargetSchedule,
    sigma: float,
    action_side: ActionSide,
) -> np.ndarray:
    """Covector eta -> d/deps <node_force(exp(eps eta) g), rho> at eps = 0"""
    target = schedule.target_at(k)
    if target is None or not np.any(rho):
        return np.zeros(group.dim)

    manifold = schedule.manifold
    basis = group.basis
    out = np.zeros(group.dim)
    if action_side is ActionSide.LEFT:
        q = manifold.act(group, g, schedule.initial)
        c = manifold.penalty_gradient(q, target)
        velocities = manifold.generators(group, q)
        for eta in range(group.dim):
            for i in range(group.dim):
                if rho[i] == 0.0:
                    continue
                curvature = manifold.penalty_hessian(q, target, velocities[eta], velocities[i])
                out[eta] += rho[i] * (curvature + pair(c, manifold.apply(basis[i] @ basis[eta], q)))
        return out / sigma**2

    g_inv = group.inverse(g)
    q = manifold.act(group, g_inv, schedule.initial)
    c = manifold.penalty_gradient(q, target)
    velocities = [manifold.apply(g_inv @ e, schedule.initial) for e in basis]
    for eta in range(group.dim):
        for i in range(group.dim):
            if rho[i] == 0.0:
                continue
            curvature = manifold.penalty_hessian(q, target, velocities[eta], velocities[i])
            out[eta] += rho[i] * (curvature + pair(c, manifold.apply(g_inv @ basis[eta] @ basis[i], schedule.initial)))
    return out / sigma**2
