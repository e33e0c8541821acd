"""Configuration loader for paraverse."""

import os
import yaml
from pathlib import Path
from typing import Dict, Any, Optional
from dotenv import load_dotenv
import logging

from .models import Limits

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = Path(__file__).resolve().parents[2] / "config" / "settings.yaml"
LIMITS_ENV_VAR = "PARAVERSE_LIMITS"


class Config:
    """Configuration manager."""

    def __init__(self, config_path: Optional[str] = None):
        """Load configuration from YAML file."""
        # Load environment variables (PARAVERSE_LIMITS may live in .env)
        load_dotenv()

        self.config_path = Path(config_path) if config_path else DEFAULT_CONFIG_PATH
        self._explicit = config_path is not None
        self._config: Dict[str, Any] = {}
        self.load()

    def load(self):
        """Load configuration from file."""
        if not self.config_path.exists():
            if self._explicit:
                raise FileNotFoundError(f"Configuration file not found: {self.config_path}")
            logger.warning(f"No configuration at {self.config_path}, using built-in defaults")
            return

        with open(self.config_path, 'r') as f:
            self._config = yaml.safe_load(f) or {}

        # Replace environment variable placeholders
        self._resolve_env_vars(self._config)
        logger.info(f"Loaded configuration from {self.config_path}")

    def _resolve_env_vars(self, data: Any):
        """Recursively replace ${VAR} placeholders with environment variables."""
        items = data.items() if isinstance(data, dict) else enumerate(data) if isinstance(data, list) else []
        for key, value in list(items):
            if isinstance(value, str) and value.startswith("${") and value.endswith("}"):
                data[key] = os.getenv(value[2:-1], value)
            elif isinstance(value, (dict, list)):
                self._resolve_env_vars(value)

    def get(self, key: str, default: Any = None) -> Any:
        """Get configuration value by dot-notation key."""
        value: Any = self._config
        for k in key.split('.'):
            if not isinstance(value, dict):
                return default
            value = value.get(k)
            if value is None:
                return default
        return value

    @property
    def limits(self) -> Limits:
        """Limits from settings.yaml, then overridden by PARAVERSE_LIMITS."""
        section = self.get('limits', {}) or {}
        limits = Limits().merged({
            k: v for k, v in section.items() if k in Limits.model_fields and v is not None
        })
        env_value = os.getenv(LIMITS_ENV_VAR)
        if env_value:
            logger.info(f"Applying {LIMITS_ENV_VAR}={env_value}")
            limits = limits.merged(Limits.parse_overrides(env_value))
        return limits

    @property
    def log_level(self) -> str:
        """Get logging level name."""
        return str(self.get('logging.level', 'WARNING')).upper()

    @property
    def log_format(self) -> str:
        """Get logging format string."""
        return self.get('logging.format', '%(asctime)s - %(name)s - %(levelname)s - %(message)s')

    @property
    def corpus_directory(self) -> str:
        """Get directory of bundled models."""
        return self.get('paths.corpus', './corpus')

    @property
    def json_indent(self) -> int:
        """Get indentation for JSON results."""
        return int(self.get('output.json_indent', 2))

    @property
    def arctl_caps(self) -> Dict[str, int]:
        """Get caps on the explicit valuation universe."""
        return {
            'max_actions': int(self.get('arctl.max_actions', 8)),
            'max_variables': int(self.get('arctl.max_variables', 3)),
        }


# Global config instance
_config: Optional[Config] = None


def get_config(config_path: Optional[str] = None) -> Config:
    """Get global config instance."""
    global _config
    if _config is None or (config_path is not None and Path(config_path) != _config.config_path):
        _config = Config(config_path)
    return _config
