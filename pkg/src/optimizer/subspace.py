# lib
import numpy as np

# project
from src.homspace import ObjectManifold
from src.integrator.problem import ProblemSpec, to_internal_problem
from src.lie.groups import GroupDescriptor
from src.util import ActionSide


def isotropy_annihilator_basis(manifold: ObjectManifold, group: GroupDescriptor, q0: np.ndarray) -> np.ndarray:
    """Orthonormal columns spanning the dual vectors that vanish on the isotropy algebra of q0"""
    return manifold.annihilator_basis(group, q0)


def shooting_subspace(problem: ProblemSpec) -> np.ndarray:
    """Columns spanning the admissible initial mu0 in the right-reduction frame.

    Optimal mu0 annihilates the isotropy of g_k Q0 when the group acts
    from the left there; with a right action no such confinement holds
    and the whole dual space is searched.
    """
    internal = to_internal_problem(problem)
    if internal.action_side is ActionSide.LEFT:
        return isotropy_annihilator_basis(internal.manifold, internal.group, internal.schedule.initial)
    return np.eye(internal.group.dim)


def project(basis: np.ndarray, mu: np.ndarray) -> np.ndarray:
    return basis @ (basis.T @ np.asarray(mu, dtype=float))
