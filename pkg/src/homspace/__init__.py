"""Object manifolds Q on which the group acts.

Each manifold knows how a matrix (group element or algebra element)
acts on its points, how far apart two points are, and the first and
second derivatives of the penalty F = d^2 / 2 in ambient coordinates.
Momentum maps and node forces are assembled from these pieces in
targets.py, so a new manifold only has to implement this interface.
"""

# std
from abc import ABC, abstractmethod
from typing import List

# lib
import numpy as np
import scipy.linalg

# project
from src.exceptions import DescriptorMismatchError
from src.lie.groups import GroupDescriptor

# rank cut-off for the isotropy null space
ISOTROPY_RCOND = 1e-10


def pair(covector: np.ndarray, vector: np.ndarray) -> float:
    """Real pairing of ambient covectors and vectors, complex entries included"""
    return float(np.real(np.vdot(covector, vector)))


class ObjectManifold(ABC):
    is_complex = False

    @staticmethod
    @abstractmethod
    def config_name() -> str:
        pass

    @property
    def label(self) -> str:
        return self.config_name()

    @abstractmethod
    def supports(self, group: GroupDescriptor) -> bool:
        pass

    @abstractmethod
    def normalize(self, q: np.ndarray) -> np.ndarray:
        pass

    @abstractmethod
    def apply(self, matrix: np.ndarray, q: np.ndarray) -> np.ndarray:
        """Linear action of a matrix on ambient coordinates.

        For group elements this is the group action. For algebra
        elements (and products ending in one) it is the infinitesimal
        action, which is why affine parts follow the homogeneous rule.
        """

    @abstractmethod
    def distance(self, q1: np.ndarray, q2: np.ndarray) -> float:
        pass

    @abstractmethod
    def penalty_gradient(self, q: np.ndarray, target: np.ndarray) -> np.ndarray:
        """Ambient gradient of d(., target)^2 / 2 at q, i.e. d * d1d"""

    @abstractmethod
    def penalty_hessian(self, q: np.ndarray, target: np.ndarray, u: np.ndarray, v: np.ndarray) -> float:
        """Second derivative of d(., target)^2 / 2 at q along tangent u, v"""

    def tangent_project(self, q: np.ndarray, v: np.ndarray) -> np.ndarray:
        return v

    def residual(self, q: np.ndarray) -> float:
        return 0.0

    def require(self, group: GroupDescriptor):
        if not self.supports(group):
            raise DescriptorMismatchError(f"{group.label} does not act on {self.label}")

    def act(self, group: GroupDescriptor, g: np.ndarray, q: np.ndarray) -> np.ndarray:
        self.require(group)
        return self.normalize(self.apply(g, q))

    def d1_distance(self, q1: np.ndarray, q2: np.ndarray) -> np.ndarray:
        d = self.distance(q1, q2)
        if d == 0.0:
            return np.zeros_like(q1)
        return self.tangent_project(q1, self.penalty_gradient(q1, q2)) / d

    def generators(self, group: GroupDescriptor, q: np.ndarray) -> List[np.ndarray]:
        """Infinitesimal action of each basis element at q, unprojected"""
        return [self.apply(e, q) for e in group.basis]

    def infinitesimal_action(self, group: GroupDescriptor, q: np.ndarray) -> np.ndarray:
        """Real matrix whose column i is the tangent vector (E_i)_Q(q)"""
        columns = [self.tangent_project(q, x) for x in self.generators(group, q)]
        stacked = np.array(columns).T
        if self.is_complex:
            stacked = np.concatenate([stacked.real, stacked.imag], axis=0)
        return np.real(stacked)

    def momentum_map(self, group: GroupDescriptor, q: np.ndarray, alpha: np.ndarray) -> np.ndarray:
        """Cotangent-lift momentum map: <J(alpha), E_i> = <alpha, (E_i)_Q(q)>"""
        self.require(group)
        return np.array([pair(alpha, x) for x in self.generators(group, q)])

    def isotropy_basis(self, group: GroupDescriptor, q: np.ndarray) -> np.ndarray:
        """Orthonormal columns spanning the isotropy algebra of q"""
        return scipy.linalg.null_space(self.infinitesimal_action(group, q), rcond=ISOTROPY_RCOND)

    def annihilator_basis(self, group: GroupDescriptor, q: np.ndarray) -> np.ndarray:
        """Orthonormal columns spanning the annihilator of the isotropy algebra of q"""
        action = self.infinitesimal_action(group, q)
        if not np.any(action):
            return np.zeros((group.dim, 0))
        return scipy.linalg.orth(action.T, rcond=ISOTROPY_RCOND)
