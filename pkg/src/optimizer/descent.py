"""Projected gradient descent on the initial momenta with Armijo backtracking"""

# std
import logging
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

# lib
import numpy as np

# project
from src.adjoint.backward_pass import adjoint_available, adjoint_gradient
from src.adjoint.finite_difference import DEFAULT_FD_EPS, fd_gradient
from src.exceptions import NUMERIC_FAILURES, ConfigError
from src.integrator.flow import discrete_action, integrate_internal
from src.integrator.momentum import terminal_residuals
from src.integrator.problem import DiscretePath, ProblemSpec, convert_path, to_internal_momenta, to_internal_problem
from .subspace import project, shooting_subspace

# smallest trial step before the line search gives up
MIN_STEP = 1e-16
# relative cost changes below this are treated as round-off
ROUNDOFF_DECREASE = 1e-14

GRADIENT_ADJOINT = "adjoint"
GRADIENT_FINITE_DIFFERENCE = "finite-difference"

# first trial step of each iteration: Barzilai-Borwein, or the last accepted step grown back toward step_init
STEP_RULE_BB = "bb"
STEP_RULE_EXPAND = "expand"
STEP_RULES = (STEP_RULE_BB, STEP_RULE_EXPAND)
# Barzilai-Borwein steps are clipped to [MIN_STEP, MAX_BB_STEP]
MAX_BB_STEP = 1e6

# trial points where the forward flow breaks down are rejected like a failed Armijo test
TRIAL_FAILURES = NUMERIC_FAILURES


@dataclass
class OptimizerConfig:
    max_iters: int = 1000
    grad_tol: float = 1e-8
    step_init: float = 1.0
    backtrack_factor: float = 0.5
    armijo_c: float = 1e-4
    homotopy_schedule: Optional[List[float]] = None
    fd_eps: float = DEFAULT_FD_EPS
    step_rule: str = STEP_RULE_BB
    # bridging stages the continuation may insert in front of each scheduled sigma
    homotopy_bridges: int = 6

    def __post_init__(self):
        if int(self.max_iters) != self.max_iters or self.max_iters < 0:
            raise ConfigError(f"Invalid optimizer - max_iters must be a non-negative integer, got {self.max_iters}")
        if not self.grad_tol > 0:
            raise ConfigError(f"Invalid optimizer - grad_tol must be positive, got {self.grad_tol}")
        if not self.step_init > 0:
            raise ConfigError(f"Invalid optimizer - step_init must be positive, got {self.step_init}")
        if not 0 < self.backtrack_factor < 1:
            raise ConfigError(f"Invalid optimizer - backtrack_factor must lie in (0, 1), got {self.backtrack_factor}")
        if not 0 < self.armijo_c < 1:
            raise ConfigError(f"Invalid optimizer - armijo_c must lie in (0, 1), got {self.armijo_c}")
        if not self.fd_eps > 0:
            raise ConfigError(f"Invalid optimizer - fd_eps must be positive, got {self.fd_eps}")
        if int(self.homotopy_bridges) != self.homotopy_bridges or self.homotopy_bridges < 0:
            raise ConfigError(
                f"Invalid optimizer - homotopy_bridges must be a non-negative integer, got {self.homotopy_bridges}"
            )
        if self.step_rule not in STEP_RULES:
            raise ConfigError(f"Invalid optimizer - step_rule must be one of {list(STEP_RULES)}, got {self.step_rule}")


@dataclass
class StageRecord:
    sigma: float
    cost: float
    grad_norm: float
    iterations: int
    converged: bool


@dataclass
class OptimResult:
    mu0_0: np.ndarray
    mu1_0: np.ndarray
    cost: float
    grad_norm: float
    terminal_residuals: Tuple[float, float]
    iterations: int
    converged: bool
    path: DiscretePath
    gradient_method: str
    message: str = ""
    cost_history: List[float] = field(default_factory=list)
    history: List[StageRecord] = field(default_factory=list)


class _ShootingObjective:
    """Cost and gradient of the shooting problem in the right-reduction frame"""

    def __init__(self, problem: ProblemSpec, fd_eps: float):
        self.problem = to_internal_problem(problem)
        self.d = self.problem.group.dim
        self.basis = shooting_subspace(problem)
        self.fd_eps = fd_eps
        self.method = GRADIENT_ADJOINT if adjoint_available(self.problem) else GRADIENT_FINITE_DIFFERENCE

    def admissible(self, z: np.ndarray) -> np.ndarray:
        return np.concatenate([project(self.basis, z[: self.d]), z[self.d :]])

    def cost(self, z: np.ndarray) -> Tuple[float, DiscretePath]:
        path = integrate_internal(self.problem, z[: self.d], z[self.d :])
        return discrete_action(self.problem, path), path

    def gradient(self, z: np.ndarray, path: DiscretePath) -> np.ndarray:
        if self.method == GRADIENT_ADJOINT:
            grad_mu0, grad_mu1 = adjoint_gradient(self.problem, path)
        else:
            grad_mu0, grad_mu1 = fd_gradient(self.problem, z[: self.d], z[self.d :], self.fd_eps)
        return self.admissible(np.concatenate([grad_mu0, grad_mu1]))


def _next_trial_step(config: OptimizerConfig, step: float, s: np.ndarray, y: np.ndarray) -> float:
    """First trial step of the following iteration, from the accepted displacement s and gradient change y"""
    if config.step_rule == STEP_RULE_BB:
        curvature = float(s @ y)
        if curvature > 0.0:
            return float(np.clip(float(s @ s) / curvature, MIN_STEP, MAX_BB_STEP))
    return min(config.step_init, step / config.backtrack_factor)


def descend(
    problem: ProblemSpec, config: OptimizerConfig, init_mu0: np.ndarray, init_mu1: np.ndarray
) -> OptimResult:
    """Minimize the shooting cost over (mu0_0, mu1_0), mu0_0 kept in the annihilator subspace.

    Forward-flow failures at the starting point propagate; at trial
    points they shrink the step.
    """
    objective = _ShootingObjective(problem, config.fd_eps)
    d = objective.d
    mu0, mu1 = to_internal_momenta(problem, init_mu0, init_mu1)
    z = objective.admissible(np.concatenate([mu0, mu1]))

    cost, path = objective.cost(z)
    grad = objective.gradient(z, path)
    grad_norm = float(np.linalg.norm(grad))
    cost_history = [cost]
    converged = grad_norm <= config.grad_tol
    message = "gradient tolerance reached" if converged else ""
    step = config.step_init
    next_step = config.step_init
    iterations = 0

    while not converged and iterations < config.max_iters:
        step = next_step
        accepted = None
        while step >= MIN_STEP:
            trial = objective.admissible(z - step * grad)
            try:
                trial_cost, trial_path = objective.cost(trial)
            except TRIAL_FAILURES as ex:
                logging.debug(f"Trial step {step:.3e} rejected: {ex}")
                step *= config.backtrack_factor
                continue

            if trial_cost <= cost - config.armijo_c * step * grad_norm**2:
                accepted = (trial, trial_cost, trial_path, objective.gradient(trial, trial_path))
                break
            if trial_cost <= cost and cost - trial_cost <= ROUNDOFF_DECREASE * max(1.0, abs(cost)):
                # decrease at round-off level, fall back to the gradient norm
                trial_grad = objective.gradient(trial, trial_path)
                if np.linalg.norm(trial_grad) < grad_norm:
                    accepted = (trial, trial_cost, trial_path, trial_grad)
                    break
            step *= config.backtrack_factor

        if accepted is None:
            message = f"line search failed: step below {MIN_STEP:g}"
            logging.warning(f"Descent stopped after {iterations} iterations, {message}")
            break

        next_step = _next_trial_step(config, step, accepted[0] - z, accepted[3] - grad)
        z, cost, path, grad = accepted
        grad_norm = float(np.linalg.norm(grad))
        cost_history.append(cost)
        iterations += 1
        logging.debug(f"Iteration {iterations}: cost={cost:.12e} |grad|={grad_norm:.3e} step={step:.3e}")
        if grad_norm <= config.grad_tol:
            converged = True
            message = "gradient tolerance reached"

    if not converged and not message:
        message = f"maximum of {config.max_iters} iterations reached"
        logging.warning(f"Descent did not converge: {message}, |grad| = {grad_norm:.3e}")

    residuals = terminal_residuals(objective.problem, path)
    mu0_out, mu1_out = to_internal_momenta(problem, z[:d], z[d:])
    logging.info(
        f"Descent at sigma={problem.sigma:g} finished: cost={cost:.12e} |grad|={grad_norm:.3e} "
        f"iterations={iterations} converged={converged} ({objective.method} gradient)"
    )
    return OptimResult(
        mu0_0=mu0_out,
        mu1_0=mu1_out,
        cost=cost,
        grad_norm=grad_norm,
        terminal_residuals=residuals,
        iterations=iterations,
        converged=converged,
        path=convert_path(problem, path),
        gradient_method=objective.method,
        message=message,
        cost_history=cost_history,
        history=[StageRecord(problem.sigma, cost, grad_norm, iterations, converged)],
    )
