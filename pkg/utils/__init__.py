"""
Utility functions and helpers.
"""

from utils.logger import setup_logger, ScenarioLogger
from utils.config_loader import ConfigLoader, get_config_loader
from utils.validators import GridSpec, ScenarioConfig, parse_scenario_config, load_config_file

__all__ = [
    'setup_logger',
    'ScenarioLogger',
    'ConfigLoader',
    'get_config_loader',
    'GridSpec',
    'ScenarioConfig',
    'parse_scenario_config',
    'load_config_file',
]
