# lib
import numpy as np

# project
from src.lie.groups import GroupDescriptor, GroupName
from . import ObjectManifold


class Euclidean(ObjectManifold):
    """R^m acted on by the translation group R^m"""

    def __init__(self, m: int = 3):
        self.m = m

    @staticmethod
    def config_name() -> str:
        return "euclidean"

    @property
    def label(self) -> str:
        return f"euclidean:{self.m}"

    def supports(self, group: GroupDescriptor) -> bool:
        return group.name is GroupName.ABELIAN and group.parameter == self.m

    def normalize(self, q: np.ndarray) -> np.ndarray:
        return np.asarray(q, dtype=float)

    def apply(self, matrix: np.ndarray, q: np.ndarray) -> np.ndarray:
        m = self.m
        return np.real(matrix[:m, :m] @ q + matrix[:m, m])

    def distance(self, q1: np.ndarray, q2: np.ndarray) -> float:
        return float(np.linalg.norm(q1 - q2))

    def penalty_gradient(self, q: np.ndarray, target: np.ndarray) -> np.ndarray:
        return q - target

    def penalty_hessian(self, q: np.ndarray, target: np.ndarray, u: np.ndarray, v: np.ndarray) -> float:
        return float(u @ v)
