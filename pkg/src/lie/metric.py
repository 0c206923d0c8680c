# std
from typing import Optional

# lib
import numpy as np
import scipy.linalg

# project
from src.exceptions import ConfigError, DescriptorMismatchError
from .groups import GroupDescriptor, GroupName


class MetricOperator:
    """Inner product on the Lie algebra, given by an SPD matrix gamma in
    basis coordinates. flat lowers indices, sharp raises them.
    """

    def __init__(self, group: GroupDescriptor, gamma: Optional[np.ndarray] = None):
        self.group = group
        gamma = np.eye(group.dim) if gamma is None else np.array(gamma, dtype=float)
        if gamma.shape != (group.dim, group.dim):
            raise ConfigError(f"Invalid metric - expected a {group.dim}x{group.dim} matrix, got {gamma.shape}")
        if not np.allclose(gamma, gamma.T, rtol=0.0, atol=1e-12 * max(1.0, np.abs(gamma).max())):
            raise ConfigError("Invalid metric - gamma is not symmetric")
        if np.linalg.eigvalsh(gamma).min() <= 0.0:
            raise ConfigError("Invalid metric - gamma is not positive definite")

        self.gamma = gamma
        self._cholesky = scipy.linalg.cho_factor(gamma)
        self.gamma_inv = scipy.linalg.cho_solve(self._cholesky, np.eye(group.dim))

    def flat(self, xi: np.ndarray) -> np.ndarray:
        return self.gamma @ xi

    def sharp(self, mu: np.ndarray) -> np.ndarray:
        return scipy.linalg.cho_solve(self._cholesky, mu)

    def norm_squared(self, xi: np.ndarray) -> float:
        return float(xi @ self.gamma @ xi)

    def ad_dagger(self, xi: np.ndarray, eta: np.ndarray) -> np.ndarray:
        return self.sharp(self.group.ad_star(xi, self.flat(eta)))

    def ad_dagger_matrix(self, xi: np.ndarray) -> np.ndarray:
        return self.gamma_inv @ self.group.ad_matrix(xi).T @ self.gamma


def trace_metric(group: GroupDescriptor) -> MetricOperator:
    """The -2 tr(AB) inner product on su(n)"""
    if group.name is not GroupName.SUN:
        raise DescriptorMismatchError(f"trace metric is only shipped for su(n), not {group.label}")
    gram = -2.0 * np.real(np.einsum("aij,bji->ab", group.basis, group.basis))
    return MetricOperator(group, gram)
