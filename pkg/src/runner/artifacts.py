"""Artifact writers. Output depends only on the inputs, never on wall-clock time."""

# std
import json
import logging
from pathlib import Path
from typing import List

# project
from src.diagnostics import Finding
from src.integrator.export import momentum_table, path_table, write_table
from src.integrator.flow import target_distances
from src.integrator.problem import ProblemSpec
from src.optimizer.descent import OptimResult
from src.oracle.convergence import ConvergenceStudy
from src.util import format_float

PATH_CSV = "path.csv"
MOMENTUM_CSV = "momentum.csv"
SUMMARY_JSON = "summary.json"
SWEEP_CSV = "sigma_sweep.csv"
CONVERGENCE_CSV = "convergence.csv"
CONVERGENCE_JSON = "convergence.json"
GRADIENT_JSON = "gradient_check.json"


def write_json(file_path: Path, data: dict):
    file_path.parent.mkdir(parents=True, exist_ok=True)
    with open(file_path, "w", encoding="utf-8") as f:
        json.dump(data, f, indent=2, sort_keys=True)
        f.write("\n")
    logging.info(f"Wrote {file_path}")


def solve_summary(problem: ProblemSpec, result: OptimResult, findings: List[Finding]) -> dict:
    return {
        "final_cost": result.cost,
        "grad_norm": result.grad_norm,
        "terminal_residuals": list(result.terminal_residuals),
        "per_target_distances": target_distances(problem, result.path),
        "iterations": result.iterations,
        "converged": result.converged,
        "message": result.message,
        "gradient_method": result.gradient_method,
        "sigma": problem.sigma,
        "mu0_0": [float(x) for x in result.mu0_0],
        "mu1_0": [float(x) for x in result.mu1_0],
        "stages": [
            {
                "sigma": record.sigma,
                "cost": record.cost,
                "grad_norm": record.grad_norm,
                "iterations": record.iterations,
                "converged": record.converged,
            }
            for record in result.history
        ],
        "findings": [finding.to_json() for finding in findings],
    }


def write_solve_artifacts(
    out_dir: Path, problem: ProblemSpec, result: OptimResult, findings: List[Finding], outputs
) -> List[Path]:
    written = []
    if outputs.path_csv:
        write_table(out_dir / PATH_CSV, *path_table(problem, result.path))
        written.append(out_dir / PATH_CSV)
    if outputs.momentum_csv:
        write_table(out_dir / MOMENTUM_CSV, *momentum_table(problem, result.path))
        written.append(out_dir / MOMENTUM_CSV)
    if outputs.summary_json:
        write_json(out_dir / SUMMARY_JSON, solve_summary(problem, result, findings))
        written.append(out_dir / SUMMARY_JSON)
    return written


def write_convergence_artifacts(out_dir: Path, study: ConvergenceStudy, outputs) -> List[Path]:
    written = []
    if outputs.convergence_csv:
        rows = [[format_float(row.h), str(row.N), format_float(row.error)] for row in study.rows]
        write_table(out_dir / CONVERGENCE_CSV, ["h", "N", "error"], rows)
        written.append(out_dir / CONVERGENCE_CSV)
    if outputs.summary_json:
        summary = {
            "fitted_order": study.fitted_order,
            "h_ref": study.h_ref,
            "final_time": study.final_time,
            "monotone": study.monotone,
        }
        write_json(out_dir / CONVERGENCE_JSON, summary)
        written.append(out_dir / CONVERGENCE_JSON)
    return written
