import yaml
from pathlib import Path
from typing import Dict, Any
import os

from mathtools.errors import ConfigError


class ConfigLoader:
    """
    Loads and manages application defaults from config.yaml.
    """

    def __init__(self, config_path: str = "config.yaml"):
        self.config_path = Path(config_path)
        self._config = None

    def load_config(self) -> Dict[str, Any]:
        """Load configuration from config.yaml."""
        if self._config is None:
            try:
                with open(self.config_path, 'r', encoding='utf-8') as f:
                    self._config = yaml.safe_load(f) or {}
            except FileNotFoundError:
                raise ConfigError(f"configuration file not found: {self.config_path}") from None
            except yaml.YAMLError as e:
                raise ConfigError(f"invalid YAML in {self.config_path}: {e}") from None
        return self._config

    def get(self, key_path: str, default: Any = None) -> Any:
        """
        Get a configuration value using dot notation.

        Example: config.get('harness.points') returns config['harness']['points']
        """
        config = self.load_config()
        keys = key_path.split('.')
        value = config

        try:
            for key in keys:
                value = value[key]
            return value
        except (KeyError, TypeError):
            return default

    def get_quadrature_config(self) -> Dict[str, Any]:
        """Get quadrature settings."""
        return self.load_config().get('quadrature', {})

    def get_kernel_config(self) -> Dict[str, Any]:
        """Get kernel condition-check settings."""
        return self.load_config().get('kernels', {})

    def get_mellin_config(self) -> Dict[str, Any]:
        """Get Mellin spectrum settings."""
        return self.load_config().get('mellin', {})

    def get_classifier_config(self) -> Dict[str, Any]:
        """Get limit-trace classifier settings."""
        return self.load_config().get('classifier', {})

    def get_harness_config(self) -> Dict[str, Any]:
        """Get harness defaults; the output directory may be overridden from the environment."""
        harness = dict(self.load_config().get('harness', {}))
        env_name = harness.get('output_dir_env', 'CONVERSE_FATOU_OUTPUT_DIR')
        if os.getenv(env_name):
            harness['output_dir'] = os.getenv(env_name)
        return harness

    def get_logging_config(self) -> Dict[str, Any]:
        """Get logging configuration."""
        return self.load_config().get('logging', {})

    def get_app_config(self) -> Dict[str, Dict[str, Any]]:
        """Every section the harness reads, with environment overrides applied."""
        return {
            'quadrature': self.get_quadrature_config(),
            'kernels': self.get_kernel_config(),
            'mellin': self.get_mellin_config(),
            'classifier': self.get_classifier_config(),
            'harness': self.get_harness_config(),
            'logging': self.get_logging_config(),
        }


# Global instance
_config_loader = None


def get_config_loader(config_path: str = "config.yaml") -> ConfigLoader:
    """Get or create global config loader instance."""
    global _config_loader
    if _config_loader is None:
        _config_loader = ConfigLoader(config_path)
    return _config_loader
