"""Configuration, the acceptance checks and the ``eqk`` command line."""

from .checks import CRITERIA, Check, run_suite
from .config import ConfigError, WorkbenchConfig, load_config, load_preset, parse_config, preset_names
from .main import main
