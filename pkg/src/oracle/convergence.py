# std
import logging
from dataclasses import dataclass, replace
from typing import List, Sequence

# lib
import numpy as np

# project
from src.exceptions import ConfigError
from src.homspace.targets import TargetSchedule
from src.integrator.flow import integrate_internal
from src.integrator.problem import ProblemSpec, to_internal_momenta, to_internal_problem
from .continuous import initial_state, rk4_trajectory

# the reference step is this much finer than the finest studied step
REFERENCE_REFINEMENT = 100


@dataclass
class ConvergenceRow:
    h: float
    N: int
    error: float


@dataclass
class ConvergenceStudy:
    rows: List[ConvergenceRow]
    fitted_order: float
    h_ref: float
    final_time: float

    @property
    def monotone(self) -> bool:
        """Errors shrink with h"""
        ordered = sorted(self.rows, key=lambda row: row.h)
        return all(a.error <= b.error for a, b in zip(ordered, ordered[1:]))


def free_problem(problem: ProblemSpec) -> ProblemSpec:
    """problem without targets; a target at the final time does not affect the flow on [0, T]"""
    if any(k < problem.N for k in problem.schedule.node_indices):
        raise ConfigError("Convergence studies need an interval without interior target nodes")
    schedule = TargetSchedule(problem.manifold, problem.schedule.initial, ())
    return replace(problem, schedule=schedule)


def fitted_order(hs: Sequence[float], errors: Sequence[float]) -> float:
    """Least-squares slope of log error against log h"""
    if len(hs) < 2 or any(e <= 0.0 for e in errors):
        return float("nan")
    slope, _ = np.polyfit(np.log(hs), np.log(errors), 1)
    return float(slope)


def convergence_study(
    problem: ProblemSpec, mu0_0: np.ndarray, mu1_0: np.ndarray, h_list: Sequence[float]
) -> ConvergenceStudy:
    """Endpoint error of the discrete flow against an RK4 reference over [0, h N].

    The error is |g_N - g(T)|_F + |xi0_N - xi0(T)|, both taken in the
    right-reduction frame.
    """
    if not h_list:
        raise ConfigError("Convergence study needs at least one step size")
    free = free_problem(problem)
    final_time = free.final_time
    h_ref = min(h_list) / REFERENCE_REFINEMENT

    internal_free, samples = rk4_trajectory(free, initial_state(free, mu0_0, mu1_0), h_ref, final_time)
    reference = samples[-1]
    mu0, mu1 = to_internal_momenta(free, mu0_0, mu1_0)

    rows = []
    for h in h_list:
        steps = int(round(final_time / h))
        if steps <= 0 or abs(steps * h - final_time) > 1e-9 * final_time:
            raise ConfigError(f"Step {h} does not divide the final time {final_time}")
        coarse = to_internal_problem(replace(free, h=float(h), N=steps))
        final = integrate_internal(coarse, mu0, mu1).states[-1]
        error = float(np.linalg.norm(final.g - reference.g) + np.linalg.norm(final.xi0 - reference.xi0))
        rows.append(ConvergenceRow(float(h), steps, error))
        logging.info(f"Convergence: h={h:g} N={steps} error={error:.6e}")

    order = fitted_order([row.h for row in rows], [row.error for row in rows])
    logging.info(f"Convergence: fitted order {order:.3f} against h_ref={h_ref:g} ({internal_free.group.label})")
    return ConvergenceStudy(rows, order, h_ref, final_time)
