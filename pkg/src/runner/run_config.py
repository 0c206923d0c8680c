"""Parsing and serialization of run configurations.

A run configuration is the YAML document handled by src.config.Config;
this module turns its sections into library objects and back.
"""

# std
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional

# lib
import numpy as np

# project
from src.config import Config, check_keys, check_no_unknown_keys
from src.exceptions import ConfigError
from src.homspace.targets import TargetSchedule, manifold_from_name, point_from_config, point_to_config
from src.integrator.lagrangians import lagrangian_from_config
from src.integrator.problem import DEFAULT_CAYLEY_RADIUS, ProblemSpec
from src.lie.groups import GroupName, group_from_name
from src.lie.metric import MetricOperator, trace_metric
from src.optimizer.descent import OptimizerConfig
from src.util import ActionSide, ReductionSide

PROBLEM_KEYS = (
    "group",
    "metric",
    "lagrangian",
    "manifold",
    "initial_point",
    "targets",
    "sigma",
    "h",
    "N",
    "xi0_initial",
    "action_side",
    "reduction_side",
    "cayley_radius",
    "mu0_initial",
    "mu1_initial",
)
REQUIRED_PROBLEM_KEYS = ("group", "manifold", "initial_point", "sigma", "h", "N")
OPTIMIZER_KEYS = (
    "max_iters",
    "grad_tol",
    "step_init",
    "backtrack_factor",
    "armijo_c",
    "homotopy_schedule",
    "fd_eps",
    "step_rule",
    "homotopy_bridges",
)
OUTPUT_KEYS = ("directory", "path_csv", "momentum_csv", "summary_json", "convergence_csv")
DIAGNOSTIC_KEYS = (
    "noether_conservation",
    "node_jumps",
    "terminal_certificates",
    "isotropy_annihilation",
    "momentum_reconstruction",
)
LAGRANGIAN_KEYS = ("kind", "sign", "offset", "weight")

DEFAULT_CONVERGENCE_H = [0.1, 0.05, 0.025, 0.0125]


@dataclass
class OutputsConfig:
    directory: str = "out"
    path_csv: bool = True
    momentum_csv: bool = True
    summary_json: bool = True
    convergence_csv: bool = True


@dataclass
class RunConfig:
    problem: ProblemSpec
    optimizer: OptimizerConfig
    outputs: OutputsConfig
    mu0_initial: Optional[np.ndarray] = None
    mu1_initial: Optional[np.ndarray] = None
    diagnostics: dict = field(default_factory=dict)
    log_level: str = "INFO"
    seed: Optional[int] = None
    sweep_sigmas: Optional[List[float]] = None
    convergence_h_list: List[float] = field(default_factory=lambda: list(DEFAULT_CONVERGENCE_H))

    @property
    def output_dir(self) -> Path:
        return Path(self.outputs.directory)


def _float_vector(raw, size: int, key: str) -> np.ndarray:
    try:
        vector = np.array([float(x) for x in raw])
    except (TypeError, ValueError) as ex:
        raise ConfigError(f"Invalid config - {key} must be a list of numbers") from ex
    if vector.shape != (size,):
        raise ConfigError(f"Invalid config - {key} needs {size} entries, got {vector.size}")
    return vector


def _metric(group, raw) -> MetricOperator:
    if raw is None or raw == "identity":
        return MetricOperator(group)
    if raw == "trace":
        if group.name is not GroupName.SUN:
            raise ConfigError("Invalid config - the trace metric is only defined for sun groups")
        return trace_metric(group)
    try:
        gamma = np.array(raw, dtype=float)
    except (TypeError, ValueError) as ex:
        raise ConfigError("Invalid config - metric must be identity, trace or a square matrix") from ex
    return MetricOperator(group, gamma)


def _side(enum_type, raw, default):
    if raw is None:
        return default
    try:
        return enum_type(str(raw).lower())
    except ValueError as ex:
        raise ConfigError(f"Invalid config - unknown side {raw}") from ex


def parse_problem(raw: dict) -> ProblemSpec:
    if not isinstance(raw, dict):
        raise ConfigError("Invalid config - problem must be a mapping")
    check_no_unknown_keys(PROBLEM_KEYS, raw, "problem")
    if not check_keys(REQUIRED_PROBLEM_KEYS, raw):
        raise ConfigError(f"Invalid config - problem needs the keys {', '.join(REQUIRED_PROBLEM_KEYS)}")

    group = group_from_name(raw["group"])
    metric = _metric(group, raw.get("metric"))
    lagrangian_raw = raw.get("lagrangian")
    if lagrangian_raw is not None:
        check_no_unknown_keys(LAGRANGIAN_KEYS, lagrangian_raw, "problem.lagrangian")
    lagrangian = lagrangian_from_config(metric, lagrangian_raw)

    manifold = manifold_from_name(raw["manifold"])
    entries = []
    for target in raw.get("targets") or []:
        if not isinstance(target, dict) or not check_keys(("node", "point"), target):
            raise ConfigError("Invalid config - each target needs node and point")
        check_no_unknown_keys(("node", "point"), target, "problem.targets")
        entries.append((int(target["node"]), point_from_config(manifold, target["point"])))
    schedule = TargetSchedule(manifold, point_from_config(manifold, raw["initial_point"]), tuple(entries))

    xi0 = raw.get("xi0_initial")
    return ProblemSpec(
        group=group,
        metric=metric,
        lagrangian=lagrangian,
        schedule=schedule,
        sigma=float(raw["sigma"]),
        h=float(raw["h"]),
        N=int(raw["N"]),
        xi0_initial=np.zeros(group.dim) if xi0 is None else _float_vector(xi0, group.dim, "xi0_initial"),
        action_side=_side(ActionSide, raw.get("action_side"), ActionSide.LEFT),
        reduction_side=_side(ReductionSide, raw.get("reduction_side"), ReductionSide.RIGHT),
        cayley_radius=float(raw.get("cayley_radius", DEFAULT_CAYLEY_RADIUS)),
    )


def parse_optimizer(raw: Optional[dict]) -> OptimizerConfig:
    raw = raw or {}
    check_no_unknown_keys(OPTIMIZER_KEYS, raw, "optimizer")
    values = dict(raw)
    if values.get("homotopy_schedule") is not None:
        values["homotopy_schedule"] = [float(s) for s in values["homotopy_schedule"]]
    for key in ("grad_tol", "step_init", "backtrack_factor", "armijo_c", "fd_eps"):
        if key in values:
            values[key] = float(values[key])
    if "step_rule" in values:
        values["step_rule"] = str(values["step_rule"])
    for key in ("max_iters", "homotopy_bridges"):
        if key in values:
            values[key] = int(values[key])
    return OptimizerConfig(**values)


def parse_outputs(raw: Optional[dict]) -> OutputsConfig:
    raw = raw or {}
    check_no_unknown_keys(OUTPUT_KEYS, raw, "outputs")
    outputs = OutputsConfig(**raw)
    outputs.directory = str(outputs.directory)
    return outputs


def parse_diagnostics(raw: Optional[dict]) -> dict:
    raw = raw or {}
    check_no_unknown_keys(DIAGNOSTIC_KEYS, raw, "diagnostics")
    for name, entry in raw.items():
        if not isinstance(entry, dict):
            raise ConfigError(f"Invalid config - diagnostics.{name} must be a mapping")
        check_no_unknown_keys(("enable",), entry, f"diagnostics.{name}")
    return raw


def parse_run_config(config: Config) -> RunConfig:
    problem_raw = config.get_problem_config()
    problem = parse_problem(problem_raw)
    d = problem.group.dim

    def initial(key: str) -> Optional[np.ndarray]:
        value = problem_raw.get(key)
        return None if value is None else _float_vector(value, d, key)

    sweep = config.get_sweep_sigma_config()
    convergence = config.get_convergence_config() or {}
    check_no_unknown_keys(("h_list",), convergence, "convergence")
    seed = config.get_seed()

    run_config = RunConfig(
        problem=problem,
        optimizer=parse_optimizer(config.get_optimizer_config()),
        outputs=parse_outputs(config.get_outputs_config()),
        mu0_initial=initial("mu0_initial"),
        mu1_initial=initial("mu1_initial"),
        diagnostics=parse_diagnostics(config.get_diagnostics_config()),
        log_level=str(config.get_log_level_config()),
        seed=None if seed is None else int(seed),
        sweep_sigmas=None if sweep is None else [float(s) for s in sweep],
        convergence_h_list=[float(h) for h in convergence.get("h_list", DEFAULT_CONVERGENCE_H)],
    )
    logging.debug(f"Loaded run config for {problem.group.label} acting on {problem.manifold.label}")
    return run_config


def serialize_problem(problem: ProblemSpec, mu0_initial=None, mu1_initial=None) -> dict:
    manifold = problem.manifold
    out = {
        "group": problem.group.label,
        "metric": problem.metric.gamma.tolist(),
        "lagrangian": problem.lagrangian.to_config(),
        "manifold": manifold.label,
        "initial_point": point_to_config(manifold, problem.schedule.initial),
        "targets": [{"node": k, "point": point_to_config(manifold, q)} for k, q in problem.schedule.entries],
        "sigma": float(problem.sigma),
        "h": float(problem.h),
        "N": int(problem.N),
        "xi0_initial": [float(x) for x in problem.xi0_initial],
        "action_side": problem.action_side.value,
        "reduction_side": problem.reduction_side.value,
        "cayley_radius": float(problem.cayley_radius),
    }
    if mu0_initial is not None:
        out["mu0_initial"] = [float(x) for x in mu0_initial]
    if mu1_initial is not None:
        out["mu1_initial"] = [float(x) for x in mu1_initial]
    return out


def serialize_run_config(run_config: RunConfig) -> dict:
    optimizer = run_config.optimizer
    out = {
        "log_level": run_config.log_level,
        "problem": serialize_problem(run_config.problem, run_config.mu0_initial, run_config.mu1_initial),
        "optimizer": {
            "max_iters": optimizer.max_iters,
            "grad_tol": optimizer.grad_tol,
            "step_init": optimizer.step_init,
            "backtrack_factor": optimizer.backtrack_factor,
            "armijo_c": optimizer.armijo_c,
            "homotopy_schedule": optimizer.homotopy_schedule,
            "fd_eps": optimizer.fd_eps,
            "step_rule": optimizer.step_rule,
            "homotopy_bridges": optimizer.homotopy_bridges,
        },
        "outputs": {
            "directory": run_config.outputs.directory,
            "path_csv": run_config.outputs.path_csv,
            "momentum_csv": run_config.outputs.momentum_csv,
            "summary_json": run_config.outputs.summary_json,
            "convergence_csv": run_config.outputs.convergence_csv,
        },
        "diagnostics": run_config.diagnostics,
        "convergence": {"h_list": list(run_config.convergence_h_list)},
    }
    if run_config.seed is not None:
        out["seed"] = run_config.seed
    if run_config.sweep_sigmas is not None:
        out["sweep_sigma"] = list(run_config.sweep_sigmas)
    return out
