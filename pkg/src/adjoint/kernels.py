# lib
import numpy as np

# project
from src.homspace.targets import script_a
from src.integrator.problem import ProblemSpec
from src.lie.groups import GroupDescriptor


def kappa(group: GroupDescriptor, sign: int, xi: np.ndarray, mu: np.ndarray, v: np.ndarray, h: float) -> np.ndarray:
    """Covector of rho -> d/deps <dtau*(sign h (xi + eps rho)) mu, v> at eps = 0.

    With c = sign h xi, A = e - c/2 and B = e + c/2 we have
    dtau_c v = B^-1 v A^-1, whose derivative along E_j is
    sign h/2 (B^-1 v A^-1 E_j A^-1 - B^-1 E_j B^-1 v A^-1).
    """
    lower, upper = group.cayley_factors(sign * h * np.asarray(xi, dtype=float))
    lower_inv = np.linalg.inv(lower)
    upper_inv = np.linalg.inv(upper)
    moved = upper_inv @ group.wedge(v) @ lower_inv

    derivatives = moved @ group.basis @ lower_inv - upper_inv @ group.basis @ upper_inv @ group.wedge(v) @ lower_inv
    return 0.5 * sign * h * (group.vee_stack(derivatives) @ np.asarray(mu, dtype=float))


def script_A(problem: ProblemSpec, k: int, g: np.ndarray, rho: np.ndarray) -> np.ndarray:
    """Derivative of <Delta_k, rho> along g -> exp(eps eta) g, zero away from nodes"""
    return script_a(problem.group, k, g, rho, problem.schedule, problem.sigma, problem.action_side)
