"""Backward adjoint sweep for the squared-velocity Lagrangian.

The sweep carries the sensitivities (lg, lx, lm, lp) of the shooting
cost to (g_k, xi0_k, mu0_k, mu1_k), taken over the cost terms from
step k on. Everything runs in the right-reduction frame; gradients for
left-reduction problems are mapped back by gradient().

With a = h xi0_k, m' = mu0_{k+1} and the sensitivities of state k+1,
one step back reads

    P  = lp + h xi1_k + h sharp(lx)
    M  = lm - h dtau_{-a}(P)
    lm <- Ad_{cay(-a)} M
    lp <- P
    lx <- lx + h dtau*_{-a} lg - h K-(xi0_k, m', P) + h dtau*_{-a} ad*_M m'
    lg <- Delta_k + Ad*_{cay(a)} lg + A_k(g_k, lm)

starting from lg = Delta_N(g_N) and zero elsewhere.

The Lagrange multipliers (P0, P1, V0, V1)_k of the discrete action, one
set per step k = 1..N, follow linearly from the sensitivities of state
k. With b = h xi0_{k-1},

    P0 = -dtau*_{-b}(lg) / h
    P1 = -lx / h
    V0 = -(lp + h xi1_{k-1}) / h + h sharp(P1)
    V1 = -h V0 - dtau^-1_{-b}(lm) / h

which gives P0_N = -dtau*_{-b} Delta_N / h, P1_N = 0, V0_N = -sharp(mu1_N)
and V1_N = -h V0_N, and between steps

    V0_k = V0_{k+1} - sharp(mu1_k) + h sharp(P1_k)
    V1_k = -h V0_k + dtau^-1_{-h xi0_{k-1}} dtau_{h xi0_k} V1_{k+1}

The gradient is read off as dJ/dmu0_0 = -h dtau_{h xi0_0} V1_1 and
dJ/dmu1_0 = -h V0_1.
"""

# std
import logging
from dataclasses import dataclass
from typing import List, Tuple

# lib
import numpy as np

# project
from src.exceptions import UnsupportedLagrangianError
from src.homspace.targets import node_force
from src.integrator.lagrangians import LagrangianKind
from src.integrator.problem import DiscretePath, ProblemSpec, internal_view, to_internal_momenta, to_internal_problem
from .kernels import kappa, script_A


@dataclass
class AdjointState:
    """Multipliers at step k of the g, xi0, mu1 and mu0 updates into state k"""

    P0: np.ndarray
    P1: np.ndarray
    V0: np.ndarray
    V1: np.ndarray
    k: int


def adjoint_available(problem: ProblemSpec) -> bool:
    return to_internal_problem(problem).lagrangian.kind is LagrangianKind.SQUARED_VELOCITY


def _multipliers(
    problem: ProblemSpec, path: DiscretePath, k: int, lg: np.ndarray, lx: np.ndarray, lm: np.ndarray, lp: np.ndarray
) -> AdjointState:
    group = problem.group
    h = problem.h
    b = h * path.states[k - 1].xi0
    p1 = -lx / h
    v0 = -(lp + h * path.xi1[k - 1]) / h + h * problem.metric.sharp(p1)
    return AdjointState(
        P0=-group.dtau_star(-b, lg) / h,
        P1=p1,
        V0=v0,
        V1=-h * v0 - group.dtau_inv(-b, lm) / h,
        k=k,
    )


def backward_pass(problem: ProblemSpec, path: DiscretePath) -> List[AdjointState]:
    """Multipliers for k = 1..N, in the right-reduction frame"""
    if not adjoint_available(problem):
        raise UnsupportedLagrangianError(
            f"No adjoint for the {problem.lagrangian.kind.value} lagrangian, use fd_gradient instead"
        )
    internal, path = internal_view(problem, path)
    group = internal.group
    h = internal.h
    sharp = internal.metric.sharp
    if path.N == 0:
        return []

    def force(k: int) -> np.ndarray:
        return node_force(group, k, path.states[k].g, internal.schedule, internal.sigma, internal.action_side)

    zero = np.zeros(group.dim)
    lg, lx, lm, lp = force(path.N), zero.copy(), zero.copy(), zero.copy()
    adjoints = [_multipliers(internal, path, path.N, lg, lx, lm, lp)]

    for k in range(path.N - 1, 0, -1):
        state = path.states[k]
        following = path.states[k + 1].mu0
        a = h * state.xi0

        pv = lp + h * path.xi1[k] + h * sharp(lx)
        mv = lm - h * group.dtau(-a, pv)

        lm_k = group.Ad(group.cayley(-a), mv)
        lx_k = (
            lx
            + h * group.dtau_star(-a, lg)
            - h * kappa(group, -1, state.xi0, following, pv, h)
            + h * group.dtau_star(-a, group.ad_star(mv, following))
        )
        lg_k = force(k) + group.Ad_star(group.cayley(a), lg) + script_A(internal, k, state.g, lm_k)

        lg, lx, lm, lp = lg_k, lx_k, lm_k, pv
        adjoints.append(_multipliers(internal, path, k, lg, lx, lm, lp))

    adjoints.reverse()
    logging.debug(f"Backward pass over {path.N} steps done")
    return adjoints


def gradient(problem: ProblemSpec, path: DiscretePath, adjoints: List[AdjointState]) -> Tuple[np.ndarray, np.ndarray]:
    """(dJ/dmu0_0, dJ/dmu1_0) in the problem's own frame"""
    internal, path = internal_view(problem, path)
    if not adjoints:
        zero = np.zeros(internal.group.dim)
        return zero, zero.copy()
    first = adjoints[0]
    h = internal.h
    grad_mu0 = -h * internal.group.dtau(h * path.states[0].xi0, first.V1)
    grad_mu1 = -h * first.V0
    # the momentum map to the right-reduction frame is linear and self-inverse
    return to_internal_momenta(problem, grad_mu0, grad_mu1)


def adjoint_gradient(problem: ProblemSpec, path: DiscretePath) -> Tuple[np.ndarray, np.ndarray]:
    return gradient(problem, path, backward_pass(problem, path))
