# lib
import numpy as np

# project
from src.lie.groups import GroupDescriptor, GroupName
from . import ObjectManifold


class Sphere2(ObjectManifold):
    """Unit sphere in R^3 acted on by rotations, with chordal distance"""

    @staticmethod
    def config_name() -> str:
        return "sphere2"

    def supports(self, group: GroupDescriptor) -> bool:
        return group.name is GroupName.SO3

    def normalize(self, q: np.ndarray) -> np.ndarray:
        q = np.asarray(q, dtype=float)
        return q / np.linalg.norm(q)

    def apply(self, matrix: np.ndarray, q: np.ndarray) -> np.ndarray:
        return np.real(matrix @ q)

    def distance(self, q1: np.ndarray, q2: np.ndarray) -> float:
        return float(np.linalg.norm(q1 - q2))

    def penalty_gradient(self, q: np.ndarray, target: np.ndarray) -> np.ndarray:
        return q - target

    def penalty_hessian(self, q: np.ndarray, target: np.ndarray, u: np.ndarray, v: np.ndarray) -> float:
        return float(u @ v)

    def tangent_project(self, q: np.ndarray, v: np.ndarray) -> np.ndarray:
        return v - q * (q @ v)

    def residual(self, q: np.ndarray) -> float:
        return abs(float(np.linalg.norm(q)) - 1.0)
