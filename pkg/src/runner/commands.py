"""Command implementations behind main.py. Each returns a process exit code."""

# std
import logging
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

# lib
import numpy as np

# project
from src.adjoint.backward_pass import adjoint_available, adjoint_gradient
from src.adjoint.finite_difference import fd_gradient
from src.diagnostics.path_inspector import PathInspector
from src.exceptions import NUMERIC_FAILURES, ConfigError
from src.integrator.export import write_table
from src.integrator.flow import integrate, target_distances
from src.optimizer.descent import OptimizerConfig, descend
from src.optimizer.homotopy import default_schedule, homotopy_solve
from src.optimizer.subspace import project, shooting_subspace
from src.oracle.convergence import convergence_study
from src.util import format_float, format_floats
from .artifacts import GRADIENT_JSON, SWEEP_CSV, write_convergence_artifacts, write_json, write_solve_artifacts
from .run_config import RunConfig

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3

# gradient checks pass when adjoint and finite differences agree to this relative l2 error
GRADIENT_CHECK_TOLERANCE = 1e-4
INITIAL_GUESS_SCALE = 1e-3


def initial_guess(run_config: RunConfig, admissible: bool = True) -> Tuple[np.ndarray, np.ndarray]:
    """Configured starting momenta, else small seeded noise, else zero.

    With admissible set, mu0 is projected into the shooting subspace in the
    problem's own frame; the projection commutes with the sign flip to the
    internal one.
    """
    problem = run_config.problem
    d = problem.group.dim
    if run_config.mu0_initial is not None or run_config.mu1_initial is not None:
        mu0 = np.zeros(d) if run_config.mu0_initial is None else run_config.mu0_initial
        mu1 = np.zeros(d) if run_config.mu1_initial is None else run_config.mu1_initial
    elif run_config.seed is not None:
        rng = np.random.default_rng(run_config.seed)
        mu0 = INITIAL_GUESS_SCALE * rng.standard_normal(d)
        mu1 = INITIAL_GUESS_SCALE * rng.standard_normal(d)
    else:
        return np.zeros(d), np.zeros(d)
    if not admissible:
        return np.array(mu0, dtype=float), np.array(mu1, dtype=float)
    return project(shooting_subspace(problem), mu0), np.array(mu1, dtype=float)


def cmd_solve(run_config: RunConfig, out_dir: Optional[Path] = None) -> int:
    out_dir = out_dir or run_config.output_dir
    problem = run_config.problem
    logging.info(f"Solving on {problem.group.label} / {problem.manifold.label} with sigma={problem.sigma:g}")

    mu0, mu1 = initial_guess(run_config)
    result = homotopy_solve(problem, run_config.optimizer, mu0, mu1)
    # an aborted homotopy returns a path solved at a larger sigma
    solved = problem.with_sigma(result.history[-1].sigma)
    findings = PathInspector(run_config.diagnostics).inspect(solved, result.path)
    write_solve_artifacts(out_dir, solved, result, findings, run_config.outputs)

    if not result.converged:
        logging.warning(f"Solve did not converge: {result.message}")
        return EXIT_NUMERIC
    logging.info(f"Solve converged: cost={result.cost:.12e} after {result.iterations} iterations")
    return EXIT_OK


def relative_discrepancy(reference: np.ndarray, other: np.ndarray) -> float:
    scale = float(np.linalg.norm(reference))
    difference = float(np.linalg.norm(other - reference))
    if scale == 0.0:
        return difference
    return difference / scale


def cmd_check_gradient(run_config: RunConfig, eps: Optional[float] = None, out_dir: Optional[Path] = None) -> int:
    out_dir = out_dir or run_config.output_dir
    problem = run_config.problem
    eps = run_config.optimizer.fd_eps if eps is None else eps
    if not eps > 0:
        raise ConfigError(f"Invalid --eps {eps}, it must be positive")

    mu0, mu1 = initial_guess(run_config)
    fd = np.concatenate(fd_gradient(problem, mu0, mu1, eps))
    report = {"eps": eps, "fd_gradient": [float(x) for x in fd]}

    if not adjoint_available(problem):
        print("adjoint unavailable; FD only")
        print(f"fd:      {' '.join(format_floats(fd))}")
        report["adjoint_available"] = False
        if run_config.outputs.summary_json:
            write_json(out_dir / GRADIENT_JSON, report)
        return EXIT_OK

    path = integrate(problem, mu0, mu1)
    adjoint = np.concatenate(adjoint_gradient(problem, path))
    discrepancy = relative_discrepancy(fd, adjoint)
    print(f"adjoint: {' '.join(format_floats(adjoint))}")
    print(f"fd:      {' '.join(format_floats(fd))}")
    print(f"abs diff: {' '.join(format_floats(np.abs(adjoint - fd)))}")
    print(f"relative l2 discrepancy: {format_float(discrepancy)}")

    report.update(
        {
            "adjoint_available": True,
            "adjoint_gradient": [float(x) for x in adjoint],
            "relative_discrepancy": discrepancy,
            "passed": discrepancy <= GRADIENT_CHECK_TOLERANCE,
        }
    )
    if run_config.outputs.summary_json:
        write_json(out_dir / GRADIENT_JSON, report)

    if discrepancy > GRADIENT_CHECK_TOLERANCE:
        logging.error(f"Gradient check failed: discrepancy {discrepancy:.3e} > {GRADIENT_CHECK_TOLERANCE:g}")
        return EXIT_NUMERIC
    logging.info(f"Gradient check passed: discrepancy {discrepancy:.3e}")
    return EXIT_OK


def _validate_sigmas(sigmas: Sequence[float]) -> List[float]:
    values = [float(s) for s in sigmas]
    if not values or any(not s > 0 for s in values):
        raise ConfigError(f"Invalid sigma sweep {values}, need positive values")
    if any(b >= a for a, b in zip(values, values[1:])):
        raise ConfigError(f"Invalid sigma sweep {values}, values must be strictly decreasing")
    return values


def cmd_sweep_sigma(
    run_config: RunConfig, sigmas: Optional[Sequence[float]] = None, out_dir: Optional[Path] = None
) -> int:
    out_dir = out_dir or run_config.output_dir
    problem = run_config.problem
    if sigmas is None:
        sigmas = run_config.sweep_sigmas or default_schedule(problem.sigma)
    sigmas = _validate_sigmas(sigmas)
    # each value is one warm-started stage, the sweep itself is the continuation
    stage_config = OptimizerConfig(
        max_iters=run_config.optimizer.max_iters,
        grad_tol=run_config.optimizer.grad_tol,
        step_init=run_config.optimizer.step_init,
        backtrack_factor=run_config.optimizer.backtrack_factor,
        armijo_c=run_config.optimizer.armijo_c,
        fd_eps=run_config.optimizer.fd_eps,
        step_rule=run_config.optimizer.step_rule,
    )

    mu0, mu1 = initial_guess(run_config)
    rows = []
    previous_mismatch = None
    for sigma in sigmas:
        staged = problem.with_sigma(sigma)
        try:
            result = descend(staged, stage_config, mu0, mu1)
        except NUMERIC_FAILURES as ex:
            logging.error(f"Sweep stage sigma={sigma:g} failed: {ex}")
            rows.append([format_float(sigma), "nan", "nan", "0", "0"])
            continue

        mismatch = float(sum(d**2 for d in target_distances(staged, result.path)))
        if previous_mismatch is not None and mismatch > previous_mismatch:
            logging.warning(f"Target mismatch grew from {previous_mismatch:.6e} to {mismatch:.6e} at sigma={sigma:g}")
        previous_mismatch = mismatch
        rows.append(
            [
                format_float(sigma),
                format_float(result.cost),
                format_float(mismatch),
                str(int(result.converged)),
                str(result.iterations),
            ]
        )
        mu0, mu1 = result.mu0_0, result.mu1_0

    write_table(out_dir / SWEEP_CSV, ["sigma", "final_cost", "mismatch", "converged", "iterations"], rows)
    return EXIT_OK


def cmd_convergence(
    run_config: RunConfig, h_list: Optional[Sequence[float]] = None, out_dir: Optional[Path] = None
) -> int:
    out_dir = out_dir or run_config.output_dir
    h_list = list(run_config.convergence_h_list if h_list is None else h_list)
    mu0, mu1 = initial_guess(run_config, admissible=False)
    study = convergence_study(run_config.problem, mu0, mu1, h_list)
    write_convergence_artifacts(out_dir, study, run_config.outputs)
    if not study.monotone:
        logging.warning("Endpoint errors do not decrease monotonically with h")
    logging.info(f"Fitted order {study.fitted_order:.3f}")
    return EXIT_OK
