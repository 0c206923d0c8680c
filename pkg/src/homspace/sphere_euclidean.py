# lib
import numpy as np

# project
from src.lie.groups import GroupDescriptor, GroupName
from . import ObjectManifold


class Sphere2xR3(ObjectManifold):
    """Pairs (x, y) of a unit direction and a point, moved by rigid motions.

    (R, r) sends (x, y) to (R x, R y + r). Distances are chordal in R^6.
    """

    @staticmethod
    def config_name() -> str:
        return "sphere2xr3"

    def supports(self, group: GroupDescriptor) -> bool:
        return group.name is GroupName.SE3

    def normalize(self, q: np.ndarray) -> np.ndarray:
        q = np.array(q, dtype=float)
        q[:3] = q[:3] / np.linalg.norm(q[:3])
        return q

    def apply(self, matrix: np.ndarray, q: np.ndarray) -> np.ndarray:
        rot = np.real(matrix[:3, :3])
        return np.concatenate([rot @ q[:3], rot @ q[3:] + np.real(matrix[:3, 3])])

    def distance(self, q1: np.ndarray, q2: np.ndarray) -> float:
        return float(np.linalg.norm(q1 - q2))

    def penalty_gradient(self, q: np.ndarray, target: np.ndarray) -> np.ndarray:
        return q - target

    def penalty_hessian(self, q: np.ndarray, target: np.ndarray, u: np.ndarray, v: np.ndarray) -> float:
        return float(u @ v)

    def tangent_project(self, q: np.ndarray, v: np.ndarray) -> np.ndarray:
        out = np.array(v, dtype=float)
        out[:3] = v[:3] - q[:3] * (q[:3] @ v[:3])
        return out

    def residual(self, q: np.ndarray) -> float:
        return abs(float(np.linalg.norm(q[:3])) - 1.0)
