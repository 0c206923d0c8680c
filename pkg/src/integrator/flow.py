"""Forward flow of the discrete Hamilton-Pontryagin equations.

The core works in the right-reduction convention with the Cayley map
as reconstruction, g_{k+1} = cay(h xi0_k) g_k. One step updates, in
order: mu0 (coadjoint transport plus the node impulse), the coupled
(xi1, mu1) pair, xi0, and finally g. integrate() accepts problems of
either reduction side and converts at the boundary.
"""

# std
import logging
from typing import List, Tuple

# lib
import numpy as np

# project
from src.exceptions import ConfigError, StepSizeError
from src.homspace.targets import node_force, node_penalty, observed_point
from src.util import ReductionSide
from .problem import DiscretePath, ProblemSpec, State, convert_path, to_internal_momenta, to_internal_problem


def _require_right_reduction(problem: ProblemSpec):
    if problem.reduction_side is not ReductionSide.RIGHT:
        raise ConfigError("step() works on right-reduction problems, convert with to_internal_problem first")


def check_step_size(problem: ProblemSpec, increment: np.ndarray):
    size = float(np.linalg.norm(increment))
    if size > problem.cayley_radius:
        raise StepSizeError(f"|h xi0| = {size:.3e} exceeds the Cayley radius {problem.cayley_radius}")


def seed_from_initial(problem: ProblemSpec, mu0_0: np.ndarray, mu1_0: np.ndarray) -> State:
    group = problem.group
    return State(
        g=group.identity(),
        xi0=np.array(problem.xi0_initial, dtype=float),
        mu0=np.array(mu0_0, dtype=float),
        mu1=np.array(mu1_0, dtype=float),
        k=0,
    )


def seed_momentum(problem: ProblemSpec, state: State) -> np.ndarray:
    """The transported momentum mu0_check_1 = dtau*(h xi0_0) mu0_0 carried by the seed"""
    return problem.group.dtau_star(problem.h * state.xi0, state.mu0)


def initial_mu0_from_seed(problem: ProblemSpec, mu0_check: np.ndarray) -> np.ndarray:
    return problem.group.dtau_inv_star(problem.h * np.asarray(problem.xi0_initial, dtype=float), mu0_check)


def _advance(problem: ProblemSpec, state: State) -> Tuple[State, np.ndarray, np.ndarray]:
    group = problem.group
    h = problem.h
    increment = h * state.xi0
    check_step_size(problem, increment)

    force = node_force(group, state.k, state.g, problem.schedule, problem.sigma, problem.action_side)
    mu0_next = group.dtau_inv_star(-increment, group.dtau_star(increment, state.mu0 + force))

    rhs = state.mu1 - h * group.dtau_star(-increment, mu0_next)
    xi1, mu1_next = problem.lagrangian.solve_momentum_balance(state.xi0, rhs, h)

    xi0_next = state.xi0 + h * xi1
    g_next = group.cayley(increment) @ state.g
    if group.det_drift:
        # back onto det = 1; the phase commutes with everything the flow reads from g
        g_next = group.project(g_next)
    return State(g_next, xi0_next, mu0_next, mu1_next, state.k + 1), xi1, force


def step(problem: ProblemSpec, state: State) -> Tuple[State, np.ndarray]:
    """One step k -> k+1; returns the next state and xi1_k"""
    _require_right_reduction(problem)
    next_state, xi1, _ = _advance(problem, state)
    return next_state, xi1


def integrate_internal(problem: ProblemSpec, mu0_0: np.ndarray, mu1_0: np.ndarray) -> DiscretePath:
    _require_right_reduction(problem)
    state = seed_from_initial(problem, mu0_0, mu1_0)
    path = DiscretePath(states=[state], xi1=[])
    for _ in range(problem.N):
        state, xi1, force = _advance(problem, state)
        if problem.schedule.is_node(state.k - 1):
            path.node_forces[state.k - 1] = force
        path.states.append(state)
        path.xi1.append(xi1)

    if problem.schedule.is_node(problem.N):
        path.node_forces[problem.N] = node_force(
            problem.group, problem.N, state.g, problem.schedule, problem.sigma, problem.action_side
        )
    return path


def integrate(problem: ProblemSpec, mu0_0: np.ndarray, mu1_0: np.ndarray) -> DiscretePath:
    """Integrate N steps from g0 = e, xi0_0 and the given initial momenta.

    Momenta and the returned path are in the problem's own frame.
    """
    internal = to_internal_problem(problem)
    mu0, mu1 = to_internal_momenta(problem, mu0_0, mu1_0)
    return convert_path(problem, integrate_internal(internal, mu0, mu1))


def running_cost(problem: ProblemSpec, path: DiscretePath) -> float:
    return problem.h * sum(problem.lagrangian.value(s.xi0, xi1) for s, xi1 in zip(path.states, path.xi1))


def penalty_cost(problem: ProblemSpec, path: DiscretePath) -> float:
    return sum(
        node_penalty(problem.group, k, path.states[k].g, problem.schedule, problem.sigma, problem.action_side)
        for k in problem.schedule.node_indices
    )


def discrete_action(problem: ProblemSpec, path: DiscretePath) -> float:
    """h sum l(xi0_k, xi1_k) + sum d^2(q_{N_i}, Q_{t_i}) / 2 sigma^2.

    The multiplier terms vanish on integrated paths and are left out;
    multiplier_terms() evaluates them explicitly.
    """
    return running_cost(problem, path) + penalty_cost(problem, path)


def multiplier_terms(problem: ProblemSpec, path: DiscretePath) -> float:
    """Sum of the constraint pairings of the discrete action on a right-reduction path"""
    _require_right_reduction(problem)
    group = problem.group
    h = problem.h
    total = 0.0
    for k in range(path.N):
        current, following = path.states[k], path.states[k + 1]
        increment = h * current.xi0
        mu0_check = group.dtau_star(-increment, following.mu0)
        relative = following.g @ group.inverse(current.g)
        total += h * float(mu0_check @ (group.cayley_inv(relative) / h - current.xi0))
        total += h * float(following.mu1 @ ((following.xi0 - current.xi0) / h - path.xi1[k]))
    return total


def shooting_cost(problem: ProblemSpec, mu0_0: np.ndarray, mu1_0: np.ndarray) -> float:
    return discrete_action(problem, integrate(problem, mu0_0, mu1_0))


def target_distances(problem: ProblemSpec, path: DiscretePath) -> List[float]:
    """Distance between each target and the point reached at its node"""
    distances = []
    for k, target in problem.schedule.entries:
        q = observed_point(problem.group, path.states[k].g, problem.schedule, problem.action_side)
        distances.append(problem.manifold.distance(q, target))
    logging.debug(f"Target distances: {distances}")
    return distances
