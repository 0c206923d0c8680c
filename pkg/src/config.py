# std
import logging
from pathlib import Path
from typing import Optional

# lib
import yaml

# project
from src.exceptions import ConfigError

TOP_LEVEL_KEYS = ("log_level", "seed", "problem", "optimizer", "outputs", "diagnostics", "sweep_sigma", "convergence")


class Config:
    def __init__(self, config_path: Path):
        if not config_path.is_file():
            raise ConfigError(f"Invalid config.yaml path: {config_path}")

        with open(config_path, "r", encoding="UTF-8") as config_file:
            try:
                raw = yaml.safe_load(config_file)
            except yaml.YAMLError as ex:
                raise ConfigError(f"Invalid config - cannot parse {config_path}: {ex}") from ex
        self._config = self._checked(raw)
        self.path = config_path

    @classmethod
    def from_dict(cls, raw: dict) -> "Config":
        config = cls.__new__(cls)
        config._config = cls._checked(raw)
        config.path = None
        return config

    @staticmethod
    def _checked(raw) -> dict:
        if not isinstance(raw, dict):
            raise ConfigError("Invalid config - expected a mapping at the top level")
        check_no_unknown_keys(TOP_LEVEL_KEYS, raw, "config")
        return raw

    def _get_child_config(self, key: str, required: bool = True) -> Optional[dict]:
        if key not in self._config.keys():
            if required:
                raise ConfigError(f"Invalid config - cannot find {key} key")
            else:
                return None

        return self._config[key]

    def get_config(self):
        return self._config

    def get_problem_config(self):
        return self._get_child_config("problem")

    def get_optimizer_config(self):
        return self._get_child_config("optimizer", required=False)

    def get_outputs_config(self):
        return self._get_child_config("outputs", required=False)

    def get_diagnostics_config(self):
        return self._get_child_config("diagnostics", required=False)

    def get_sweep_sigma_config(self):
        return self._get_child_config("sweep_sigma", required=False)

    def get_convergence_config(self):
        return self._get_child_config("convergence", required=False)

    def get_log_level_config(self):
        return self._config.get("log_level", "INFO")

    def get_seed(self) -> Optional[int]:
        return self._config.get("seed")


def check_keys(required_keys, config) -> bool:
    for key in required_keys:
        if key not in config.keys():
            logging.error(f"Incompatible configuration. Missing {key} in {config}.")
            return False
    return True


def check_no_unknown_keys(allowed_keys, config: dict, section: str):
    unknown = sorted(str(key) for key in config.keys() if key not in allowed_keys)
    if unknown:
        raise ConfigError(f"Invalid config - unknown keys in {section}: {', '.join(unknown)}")
