"""Momentum diagnostics along a discrete path.

All quantities are evaluated in the right-reduction frame. For a
left-reduction problem the spatial momentum reported here is, up to
sign, the user's conserved quantity Ad*_{g^-1} mu0, so norms and
residuals carry over unchanged.
"""

# std
from dataclasses import dataclass
from typing import List, Optional, Tuple

# lib
import numpy as np

# project
from src.exceptions import DescriptorMismatchError
from src.homspace.targets import node_force, observed_point
from src.lie.groups import GroupDescriptor
from src.util import ActionSide
from .problem import DiscretePath, ProblemSpec, State, internal_view


def spatial_momentum(group: GroupDescriptor, state: State) -> np.ndarray:
    """J_k = Ad*_{g_k} mu0_k"""
    return group.Ad_star(state.g, state.mu0)


@dataclass
class MomentumRow:
    k: int
    mu0_norm: float
    mu1_norm: float
    J: np.ndarray
    is_node: bool
    # J_{k+1} - J_k - Ad*_{g_k} Delta_k, undefined at k = N
    jump_residual: Optional[np.ndarray]

    @property
    def J_norm(self) -> float:
        return float(np.linalg.norm(self.J))

    @property
    def jump_norm(self) -> float:
        return float("nan") if self.jump_residual is None else float(np.linalg.norm(self.jump_residual))


def _forces(problem: ProblemSpec, path: DiscretePath) -> List[np.ndarray]:
    return [
        path.node_forces[k]
        if k in path.node_forces
        else node_force(problem.group, k, s.g, problem.schedule, problem.sigma, problem.action_side)
        for k, s in enumerate(path.states)
    ]


def momentum_report(problem: ProblemSpec, path: DiscretePath) -> List[MomentumRow]:
    internal, path = internal_view(problem, path)
    group = internal.group
    forces = _forces(internal, path)
    momenta = [spatial_momentum(group, s) for s in path.states]

    rows = []
    for k, state in enumerate(path.states):
        residual = None
        if k < path.N:
            residual = momenta[k + 1] - momenta[k] - group.Ad_star(state.g, forces[k])
        rows.append(
            MomentumRow(
                k=k,
                mu0_norm=float(np.linalg.norm(state.mu0)),
                mu1_norm=float(np.linalg.norm(state.mu1)),
                J=momenta[k],
                is_node=internal.schedule.is_node(k),
                jump_residual=residual,
            )
        )
    return rows


def terminal_residuals(problem: ProblemSpec, path: DiscretePath) -> Tuple[float, float]:
    """(|mu0_N + Delta_N(g_N)|, |mu1_N|); both vanish at critical points of the discrete action"""
    internal, path = internal_view(problem, path)
    final = path.states[-1]
    force = node_force(internal.group, path.N, final.g, internal.schedule, internal.sigma, internal.action_side)
    return float(np.linalg.norm(final.mu0 + force)), float(np.linalg.norm(final.mu1))


def reconstruct_mu0(problem: ProblemSpec, path: DiscretePath) -> List[np.ndarray]:
    """mu0_k = -Ad*_{g_k^-1} sum_{N_i >= k} Ad*_{g_{N_i}} Delta_{N_i}, in the right-reduction frame.

    This is what an optimal path must carry; compare with reconstruction_error.
    """
    internal, path = internal_view(problem, path)
    group = internal.group
    forces = _forces(internal, path)
    impulses = {k: group.Ad_star(path.states[k].g, forces[k]) for k in internal.schedule.node_indices}

    out = []
    for k, state in enumerate(path.states):
        future = sum((impulse for node, impulse in impulses.items() if node >= k), np.zeros(group.dim))
        out.append(-group.Ad_star(group.inverse(state.g), future))
    return out


def reconstruction_error(problem: ProblemSpec, path: DiscretePath) -> float:
    _, internal_path = internal_view(problem, path)
    reconstructed = reconstruct_mu0(problem, path)
    return max(float(np.linalg.norm(s.mu0 - r)) for s, r in zip(internal_path.states, reconstructed))


def isotropy_residual(problem: ProblemSpec, path: DiscretePath) -> float:
    """max over k and isotropy directions rho of g_k Q0 of |<mu0_k, rho>|.

    Only meaningful when the right-reduction frame has a left action.
    """
    internal, path = internal_view(problem, path)
    if internal.action_side is not ActionSide.LEFT:
        raise DescriptorMismatchError("isotropy confinement of mu0 needs a left action in the right-reduction frame")
    group = internal.group
    manifold = internal.manifold
    worst = 0.0
    for state in path.states:
        q = observed_point(group, state.g, internal.schedule, internal.action_side)
        basis = manifold.isotropy_basis(group, q)
        if basis.shape[1] == 0:
            continue
        worst = max(worst, float(np.max(np.abs(basis.T @ state.mu0))))
    return worst
