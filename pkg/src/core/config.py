"""
Configuration management for the Dynamic Cluster Editing toolkit
"""

import os
import re
from pathlib import Path
from typing import Any, Dict, Optional

import yaml
from dotenv import load_dotenv

# Load environment variables
load_dotenv()

DEFAULT_CONFIG_PATH = Path(__file__).resolve().parents[2] / "config" / "settings.yaml"
DEFAULT_ORACLE_CAP = 11
DEFAULT_SEED = 20240601

_PLACEHOLDER = re.compile(r"^\$\{(?P<name>[A-Za-z_][A-Za-z0-9_]*)(?::-(?P<default>.*))?\}$")


class Config:
    """Configuration manager for solvers, kernelization, generators and I/O."""

    def __init__(self, config_path: Optional[str] = None):
        self.config_path = str(config_path or DEFAULT_CONFIG_PATH)
        self.config = self._load_config()
        self._validate_config()

    def _load_config(self) -> Dict[str, Any]:
        """Load configuration from YAML file."""
        try:
            config_file = Path(self.config_path)
            if not config_file.exists():
                raise FileNotFoundError(f"Configuration file not found: {self.config_path}")

            with open(config_file, 'r') as f:
                config = yaml.safe_load(f) or {}

            return self._replace_env_vars(config)

        except Exception as e:
            raise RuntimeError(f"Failed to load configuration: {e}")

    def _replace_env_vars(self, config: Any) -> Any:
        """Recursively replace ${NAME} and ${NAME:-default} placeholders."""
        if isinstance(config, dict):
            return {k: self._replace_env_vars(v) for k, v in config.items()}
        elif isinstance(config, list):
            return [self._replace_env_vars(v) for v in config]
        elif isinstance(config, str):
            match = _PLACEHOLDER.match(config)
            if match:
                return os.getenv(match.group("name"), match.group("default") or "")
            return config
        else:
            return config

    def _validate_config(self):
        """Validate required configuration sections."""
        required_sections = ['solver', 'kernel', 'generators', 'io', 'app']

        for section in required_sections:
            if section not in self.config:
                raise ValueError(f"Missing required configuration section: {section}")

    def get(self, key: str, default: Any = None) -> Any:
        """Get configuration value by key (supports dot notation)."""
        keys = key.split('.')
        value = self.config

        try:
            for k in keys:
                value = value[k]
            return value
        except (KeyError, TypeError):
            return default

    def get_solver_config(self) -> Dict[str, Any]:
        """Get solver configuration."""
        return self.config.get('solver') or {}

    def get_kernel_config(self) -> Dict[str, Any]:
        """Get kernelization configuration."""
        return self.config.get('kernel') or {}

    def get_generator_config(self) -> Dict[str, Any]:
        """Get instance generator configuration."""
        return self.config.get('generators') or {}

    def get_io_config(self) -> Dict[str, Any]:
        """Get file format configuration."""
        return self.config.get('io') or {}

    def get_app_config(self) -> Dict[str, Any]:
        """Get application configuration."""
        return self.config.get('app') or {}

    def get_oracle_cap(self) -> int:
        """Largest vertex count the brute-force oracle accepts."""
        value = (self.get_solver_config().get('oracle') or {}).get('cap', DEFAULT_ORACLE_CAP)
        if value in (None, ""):
            return DEFAULT_ORACLE_CAP
        try:
            return int(value)
        except (TypeError, ValueError):
            raise ValueError(f"Invalid oracle cap: {value!r}")

    def get_default_seed(self) -> int:
        """Seed used by generators when none is given."""
        return int(self.get_generator_config().get('default_seed', DEFAULT_SEED))

    def get_default_algo(self) -> str:
        """Algorithm used by `solve` when none is given."""
        return str(self.get_solver_config().get('default_algo', 'auto'))

    def update(self, key: str, value: Any):
        """Update configuration value."""
        keys = key.split('.')
        config = self.config

        for k in keys[:-1]:
            if k not in config:
                config[k] = {}
            config = config[k]

        config[keys[-1]] = value
