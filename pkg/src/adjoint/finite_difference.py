# std
import logging
from typing import Callable, Tuple

# lib
import numpy as np

# project
from src.exceptions import ConfigError
from src.integrator.flow import shooting_cost
from src.integrator.problem import ProblemSpec

DEFAULT_FD_EPS = 1e-5


def central_difference(func: Callable[[np.ndarray], float], z: np.ndarray, eps: float = DEFAULT_FD_EPS) -> np.ndarray:
    """Central differences of func along each coordinate, step eps * max(1, |z_i|)"""
    if not eps > 0:
        raise ConfigError(f"Finite-difference step must be positive, got {eps}")
    z = np.array(z, dtype=float)
    out = np.zeros_like(z)
    for i in range(z.size):
        step = eps * max(1.0, abs(z[i]))
        shifted = z.copy()
        shifted[i] = z[i] + step
        upper = func(shifted)
        shifted[i] = z[i] - step
        lower = func(shifted)
        out[i] = (upper - lower) / (2.0 * step)
    return out


def fd_gradient(
    problem: ProblemSpec, mu0_0: np.ndarray, mu1_0: np.ndarray, eps: float = DEFAULT_FD_EPS
) -> Tuple[np.ndarray, np.ndarray]:
    d = problem.group.dim
    z = np.concatenate([np.asarray(mu0_0, dtype=float), np.asarray(mu1_0, dtype=float)])

    def cost(point: np.ndarray) -> float:
        return shooting_cost(problem, point[:d], point[d:])

    grad = central_difference(cost, z, eps)
    logging.debug(f"Finite-difference gradient with eps={eps}: |grad| = {np.linalg.norm(grad):.3e}")
    return grad[:d], grad[d:]
