"""Classical RK4 on the continuous second-order equations.

In the right-reduction frame the open-interval equations are

    g'   = xi0^ g
    xi0' = xi1,            xi1 from mu1 by the inverse Legendre map
    mu0' = -ad*_{xi0} mu0
    mu1' = dl/dxi0 - mu0

and mu0 jumps by the node force at interior node times. The group
factor is advanced as an ambient matrix ODE and projected back onto
the group after every step.
"""

# std
import logging
from dataclasses import dataclass
from typing import Dict, List, Tuple

# lib
import numpy as np

# project
from src.exceptions import ConfigError, ConvergenceError
from src.homspace.targets import node_force
from src.integrator.problem import ProblemSpec, to_internal_problem
from src.util import ReductionSide

BLOW_UP_LIMIT = 1e12
# tolerance, in units of h_ref, for matching times to the reference grid
GRID_MATCH = 1e-9


@dataclass
class ContinuousState:
    g: np.ndarray
    xi0: np.ndarray
    mu0: np.ndarray
    mu1: np.ndarray
    t: float = 0.0

    def _combine(self, other: "ContinuousState", weight: float) -> "ContinuousState":
        return ContinuousState(
            self.g + weight * other.g,
            self.xi0 + weight * other.xi0,
            self.mu0 + weight * other.mu0,
            self.mu1 + weight * other.mu1,
            self.t + weight * other.t,
        )


def to_internal_state(problem: ProblemSpec, state: ContinuousState) -> ContinuousState:
    """Map a state to the right-reduction frame of problem; the map is its own inverse"""
    if problem.reduction_side is ReductionSide.RIGHT:
        return state
    return ContinuousState(problem.group.inverse(state.g), -state.xi0, -state.mu0, -state.mu1, state.t)


def initial_state(problem: ProblemSpec, mu0_0: np.ndarray, mu1_0: np.ndarray) -> ContinuousState:
    return ContinuousState(
        problem.group.identity(),
        np.array(problem.xi0_initial, dtype=float),
        np.array(mu0_0, dtype=float),
        np.array(mu1_0, dtype=float),
        0.0,
    )


def ode_rhs(problem: ProblemSpec, state: ContinuousState) -> ContinuousState:
    """Time derivative of a right-reduction state; the t slot carries dt/dt = 1"""
    group = problem.group
    lagrangian = problem.lagrangian
    xi1 = lagrangian.inverse_legendre(state.xi0, state.mu1)
    return ContinuousState(
        g=group.wedge(state.xi0) @ state.g,
        xi0=xi1,
        mu0=-group.ad_star(state.xi0, state.mu0),
        mu1=lagrangian.d_xi0(state.xi0, xi1) - state.mu0,
        t=1.0,
    )


def _rk4_step(problem: ProblemSpec, state: ContinuousState, h: float) -> ContinuousState:
    k1 = ode_rhs(problem, state)
    k2 = ode_rhs(problem, state._combine(k1, h / 2))
    k3 = ode_rhs(problem, state._combine(k2, h / 2))
    k4 = ode_rhs(problem, state._combine(k3, h))
    out = state._combine(k1, h / 6)._combine(k2, h / 3)._combine(k3, h / 3)._combine(k4, h / 6)
    out.g = problem.group.project(out.g)
    return out


def _check_finite(state: ContinuousState):
    for part in (state.g, state.xi0, state.mu0, state.mu1):
        if not np.all(np.isfinite(part)) or np.max(np.abs(part)) > BLOW_UP_LIMIT:
            raise ConvergenceError(f"Reference integration blew up at t = {state.t:.6g}")


def _step_count(length: float, h_ref: float) -> int:
    if not h_ref > 0:
        raise ConfigError(f"Reference step must be positive, got {h_ref}")
    steps = int(round(length / h_ref))
    if steps < 0 or abs(steps * h_ref - length) > GRID_MATCH * h_ref * max(1, steps):
        raise ConfigError(f"Interval {length} is not a multiple of the reference step {h_ref}")
    return steps


def _node_steps(problem: ProblemSpec, h_ref: float, steps: int) -> Dict[int, int]:
    """Reference step index -> node index, for nodes strictly inside (0, T)"""
    out = {}
    for k in problem.schedule.node_indices:
        j = _step_count(k * problem.h, h_ref)
        if 0 < j < steps:
            out[j] = k
    return out


def rk4_trajectory(
    problem: ProblemSpec, initial: ContinuousState, h_ref: float, T: float
) -> Tuple[ProblemSpec, List[ContinuousState]]:
    """Samples at every reference step, in the right-reduction frame of problem.

    Returns that frame's problem together with the samples.
    """
    internal = to_internal_problem(problem)
    state = to_internal_state(problem, initial)
    steps = _step_count(T, h_ref)
    jumps = _node_steps(internal, h_ref, steps)

    samples = [state]
    for j in range(1, steps + 1):
        state = _rk4_step(internal, state, h_ref)
        state.t = j * h_ref
        if j in jumps:
            force = node_force(
                internal.group, jumps[j], state.g, internal.schedule, internal.sigma, internal.action_side
            )
            state.mu0 = state.mu0 + force
        _check_finite(state)
        samples.append(state)
    logging.debug(f"RK4 reference: {steps} steps of {h_ref:g}, {len(jumps)} node jumps")
    return internal, samples


def integrate_rk4(problem: ProblemSpec, initial: ContinuousState, h_ref: float, T: float) -> ContinuousState:
    """State at time T in the problem's own frame"""
    _, samples = rk4_trajectory(problem, initial, h_ref, T)
    return to_internal_state(problem, samples[-1])


def conservation_drift(problem: ProblemSpec, samples: List[ContinuousState]) -> float:
    """max_t |Ad*_g mu0 - Ad*_{g(0)} mu0(0)| over node-free right-reduction samples"""
    group = problem.group
    reference = group.Ad_star(samples[0].g, samples[0].mu0)
    return max(float(np.linalg.norm(group.Ad_star(s.g, s.mu0) - reference)) for s in samples)


def euler_poincare_residual(problem: ProblemSpec, samples: List[ContinuousState], h_ref: float) -> float:
    """Largest value of |dE/dt + ad*_{xi0} E| with E = dl/dxi0 - d/dt dl/dxi1.

    Derivatives are taken by finite differences of the samples, so the
    residual only vanishes to the order of those differences. The two
    samples at each end are left out.
    """
    lagrangian = problem.lagrangian
    xi0 = np.array([s.xi0 for s in samples])
    xi1 = np.array([lagrangian.inverse_legendre(s.xi0, s.mu1) for s in samples])
    momentum = np.array([lagrangian.d_xi1(a, b) for a, b in zip(xi0, xi1)])
    drive = np.array([lagrangian.d_xi0(a, b) for a, b in zip(xi0, xi1)])

    euler = drive - np.gradient(momentum, h_ref, axis=0)
    rate = np.gradient(euler, h_ref, axis=0)
    residual = [rate[j] + problem.group.ad_star(xi0[j], euler[j]) for j in range(2, len(samples) - 2)]
    if not residual:
        return 0.0
    return max(float(np.linalg.norm(r)) for r in residual)
