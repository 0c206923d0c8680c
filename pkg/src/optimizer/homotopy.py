"""Continuation in the tolerance parameter sigma.

Each stage starts from the optimum of the previous, larger sigma. A
stage that stops without converging still seeds the next one. When a
warm start breaks the forward flow, a bridging stage at the geometric
mean of the two sigmas is tried first; once the bridges run out the
run aborts and returns the last good stage together with the partial
history.
"""

# std
import logging
from dataclasses import replace
from typing import List, Optional, Sequence

# lib
import numpy as np

# project
from src.exceptions import NUMERIC_FAILURES, ConfigError
from src.integrator.problem import ProblemSpec
from .descent import OptimizerConfig, OptimResult, StageRecord, descend

DEFAULT_STAGES = 5
DEFAULT_SPAN = 10.0
# relative slack when matching the last stage to the problem sigma
SIGMA_MATCH = 1e-12


def default_schedule(sigma: float) -> List[float]:
    """Geometric schedule from 10 sigma down to sigma"""
    exponents = np.linspace(np.log10(DEFAULT_SPAN), 0.0, DEFAULT_STAGES)
    schedule = [float(sigma * 10.0**e) for e in exponents]
    schedule[-1] = float(sigma)
    return schedule


def validate_schedule(schedule: Sequence[float], sigma: float) -> List[float]:
    values = [float(s) for s in schedule]
    if not values:
        raise ConfigError("Invalid homotopy schedule - it must not be empty")
    if any(not s > 0 for s in values):
        raise ConfigError(f"Invalid homotopy schedule - sigma values must be positive, got {values}")
    if any(b >= a for a, b in zip(values, values[1:])):
        raise ConfigError(f"Invalid homotopy schedule - values must be strictly decreasing, got {values}")
    if abs(values[-1] - sigma) > SIGMA_MATCH * sigma:
        raise ConfigError(f"Invalid homotopy schedule - last value {values[-1]} must equal the problem sigma {sigma}")
    values[-1] = float(sigma)
    return values


def _finish(result: OptimResult, history: List[StageRecord], cost_history: List[float]) -> OptimResult:
    result.history = history
    result.cost_history = cost_history
    result.iterations = sum(record.iterations for record in history)
    return result


def homotopy_solve(
    problem: ProblemSpec,
    config: OptimizerConfig,
    init_mu0: Optional[np.ndarray] = None,
    init_mu1: Optional[np.ndarray] = None,
) -> OptimResult:
    """Run the sigma schedule and return the result of the last stage reached.

    A failure of the very first stage has nothing to fall back on and
    propagates. Later failures return the last good stage with
    converged set to False; its history[-1].sigma tells which sigma
    the returned path belongs to.
    """
    schedule = config.homotopy_schedule
    schedule = default_schedule(problem.sigma) if schedule is None else validate_schedule(schedule, problem.sigma)

    mu0 = np.zeros(problem.group.dim) if init_mu0 is None else np.asarray(init_mu0, dtype=float)
    mu1 = np.zeros(problem.group.dim) if init_mu1 is None else np.asarray(init_mu1, dtype=float)

    history: List[StageRecord] = []
    cost_history: List[float] = []
    result: Optional[OptimResult] = None
    pending = [(sigma, False) for sigma in schedule]
    bridges = 0
    while pending:
        sigma, bridging = pending[0]
        logging.info(f"Homotopy stage {len(history) + 1}: sigma={sigma:g}, {len(pending) - 1} scheduled after it")
        try:
            stage_result = descend(problem.with_sigma(sigma), config, mu0, mu1)
        except NUMERIC_FAILURES as ex:
            if result is None:
                raise
            solved_sigma = history[-1].sigma
            if bridges >= config.homotopy_bridges:
                message = f"homotopy aborted at sigma={sigma:g}: {ex}"
                logging.error(f"{message}, returning the stage solved at sigma={solved_sigma:g}")
                return _finish(replace(result, converged=False, message=message), history, cost_history)
            bridge = float(np.sqrt(solved_sigma * sigma))
            logging.warning(f"Warm start at sigma={sigma:g} failed ({ex}), bridging through sigma={bridge:g}")
            pending.insert(0, (bridge, True))
            bridges += 1
            continue

        pending.pop(0)
        if not bridging:
            bridges = 0
        result = stage_result
        history.extend(result.history)
        cost_history.extend(result.cost_history)
        if not result.converged:
            logging.warning(f"Homotopy stage at sigma={sigma:g} did not converge: {result.message}")
        mu0, mu1 = result.mu0_0, result.mu1_0

    assert result is not None
    return _finish(result, history, cost_history)
