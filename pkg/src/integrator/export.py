"""Plain-text export of discrete paths"""

# std
import csv
import logging
from pathlib import Path
from typing import List, Sequence, Tuple

# lib
import numpy as np

# project
from src.util import format_float, format_floats
from .momentum import momentum_report
from .problem import DiscretePath, ProblemSpec


def _coordinate_names(prefix: str, d: int) -> List[str]:
    return [f"{prefix}_{i}" for i in range(d)]


def _group_columns(problem: ProblemSpec) -> List[str]:
    n = problem.group.matrix_size
    names = [f"g_{r}{c}" for r in range(n) for c in range(n)]
    if problem.group.is_complex:
        return [f"{name}_{part}" for name in names for part in ("re", "im")]
    return names


def _group_entries(problem: ProblemSpec, g: np.ndarray) -> List[float]:
    flat = np.asarray(g).reshape(-1)
    if problem.group.is_complex:
        return [x for z in flat for x in (z.real, z.imag)]
    return list(np.real(flat))


def path_table(problem: ProblemSpec, path: DiscretePath) -> Tuple[List[str], List[List[str]]]:
    """Rows k, t, g (row-major), xi0, xi1, mu0, mu1, |J_k|, node flag.

    xi1 is only defined for k < N, the last row carries nan there.
    """
    d = problem.group.dim
    header = (
        ["k", "t"]
        + _group_columns(problem)
        + _coordinate_names("xi0", d)
        + _coordinate_names("xi1", d)
        + _coordinate_names("mu0", d)
        + _coordinate_names("mu1", d)
        + ["J_norm", "node"]
    )
    report = momentum_report(problem, path)
    rows = []
    for state, row in zip(path.states, report):
        xi1 = path.xi1[state.k] if state.k < path.N else np.full(d, np.nan)
        values = (
            [state.k * problem.h]
            + _group_entries(problem, state.g)
            + list(state.xi0)
            + list(xi1)
            + list(state.mu0)
            + list(state.mu1)
            + [row.J_norm]
        )
        rows.append([str(state.k)] + format_floats(values) + [str(int(row.is_node))])
    return header, rows


def momentum_table(problem: ProblemSpec, path: DiscretePath) -> Tuple[List[str], List[List[str]]]:
    header = ["k", "mu0_norm", "mu1_norm", "J_norm", "jump_residual", "node"]
    rows = [
        [
            str(row.k),
            format_float(row.mu0_norm),
            format_float(row.mu1_norm),
            format_float(row.J_norm),
            format_float(row.jump_norm),
            str(int(row.is_node)),
        ]
        for row in momentum_report(problem, path)
    ]
    return header, rows


def write_table(file_path: Path, header: Sequence[str], rows: Sequence[Sequence[str]]):
    file_path.parent.mkdir(parents=True, exist_ok=True)
    with open(file_path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
    logging.info(f"Wrote {len(rows)} rows to {file_path}")


def write_path_csv(problem: ProblemSpec, path: DiscretePath, file_path: Path):
    write_table(file_path, *path_table(problem, path))
