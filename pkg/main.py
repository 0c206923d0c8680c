# std
import argparse
import logging
import os
import sys
from argparse import ArgumentParser, Namespace
from pathlib import Path
from typing import Optional, Tuple

# project
from src.config import Config
from src.exceptions import ConfigError, HpSplinesError
from src.runner.commands import (
    EXIT_CONFIG,
    EXIT_NUMERIC,
    cmd_check_gradient,
    cmd_convergence,
    cmd_solve,
    cmd_sweep_sigma,
)
from src.runner.run_config import parse_run_config

LOG_ENV_VAR = "HPSPLINES_LOG"
COMMANDS = ("solve", "check-gradient", "sweep-sigma", "convergence")


def parse_arguments(argv=None) -> Tuple[ArgumentParser, Namespace]:
    parser = argparse.ArgumentParser(
        description="hpsplines: inexact trajectory planning on matrix Lie groups with the "
        "discrete Hamilton-Pontryagin principle."
    )
    parser.add_argument("command", nargs="?", choices=COMMANDS, help="what to run")
    parser.add_argument("--config", type=str, help="path to config.yaml")
    parser.add_argument("--out", type=str, help="artifact directory, overrides outputs.directory")
    parser.add_argument("--eps", type=float, help="finite-difference step for check-gradient")
    parser.add_argument("--seed", type=int, help="seed for the random initial guess")
    parser.add_argument("--version", action="store_true")
    args = parser.parse_args(argv)
    if not args.version and (args.command is None or args.config is None):
        parser.error("a command and --config are required")
    return parser, args


def get_log_level(log_level: str) -> int:
    if log_level == "CRITICAL":
        return logging.CRITICAL
    if log_level == "ERROR":
        return logging.ERROR
    if log_level == "WARNING":
        return logging.WARNING
    if log_level == "INFO":
        return logging.INFO
    if log_level == "DEBUG":
        return logging.DEBUG

    logging.warning(f"Unsupported log level: {log_level}. Fallback to INFO level.")
    return logging.INFO


def init_logging(config_level: Optional[str] = None):
    level_name = os.environ.get(LOG_ENV_VAR) or config_level or "INFO"
    logging.basicConfig(
        format="[%(asctime)s] [%(levelname)8s] --- %(message)s (%(filename)s:%(lineno)s)",
        level=get_log_level(str(level_name).upper()),
        datefmt="%Y-%m-%d %H:%M:%S",
    )


def run(args: Namespace) -> int:
    try:
        config = Config(Path(args.config))
        init_logging(config.get_log_level_config())
        logging.info(f"Starting hpsplines ({version()}): {args.command}")

        run_config = parse_run_config(config)
        if args.seed is not None:
            run_config.seed = args.seed
        out_dir = Path(args.out) if args.out else None

        if args.command == "solve":
            return cmd_solve(run_config, out_dir)
        if args.command == "check-gradient":
            return cmd_check_gradient(run_config, args.eps, out_dir)
        if args.command == "sweep-sigma":
            return cmd_sweep_sigma(run_config, out_dir=out_dir)
        return cmd_convergence(run_config, out_dir=out_dir)
    except ConfigError as ex:
        init_logging()
        logging.error(str(ex))
        return EXIT_CONFIG
    except HpSplinesError as ex:
        logging.error(f"{type(ex).__name__}: {ex}")
        return EXIT_NUMERIC


def version():
    try:
        with open(Path(__file__).resolve().parent / "VERSION") as version_file:
            return version_file.read().strip()
    except Exception as ex:
        logging.error(str(ex))
    return "unknown"


if __name__ == "__main__":
    argparse, args = parse_arguments()

    if args.version:
        print(version())
    else:
        sys.exit(run(args))
