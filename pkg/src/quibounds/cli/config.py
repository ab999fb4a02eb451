"""Sweep and logging defaults for the quibounds CLI.

Each setting resolves from its environment variable, then the ``[default]``
section of ``~/.quibounds/config``, then the built-in default.
"""

from __future__ import annotations

import configparser
import os
from pathlib import Path

from quibounds._base import DEFAULT_GRID_POINTS, DEFAULT_WORKERS

CONFIG_DIR = Path.home() / ".quibounds"
CONFIG_FILE = CONFIG_DIR / "config"
SECTION = "default"

DEFAULT_LOG_LEVEL = "WARNING"

# Setting key -> (environment variable, default)
SETTINGS: dict[str, tuple[str, str]] = {
    "grid_points": ("QUIBOUNDS_GRID", str(DEFAULT_GRID_POINTS)),
    "workers": ("QUIBOUNDS_WORKERS", str(DEFAULT_WORKERS)),
    "log_level": ("QUIBOUNDS_LOG_LEVEL", DEFAULT_LOG_LEVEL),
}


def get_config() -> configparser.ConfigParser:
    """Load the config file, or an empty config when there is none."""
    config = configparser.ConfigParser()
    if CONFIG_FILE.exists():
        config.read(CONFIG_FILE)
    return config


def save_config(config: configparser.ConfigParser) -> Path:
    """Write the config file readable by the owner only and return its path."""
    CONFIG_DIR.mkdir(parents=True, exist_ok=True)
    with open(CONFIG_FILE, "w") as f:
        config.write(f)
    CONFIG_FILE.chmod(0o600)
    return CONFIG_FILE


def setting_with_source(key: str) -> tuple[str, str]:
    """Effective value of a setting and where it came from.

    Raises:
        KeyError: If ``key`` is not one of ``SETTINGS``.
    """
    env_var, default = SETTINGS[key]
    value = os.environ.get(env_var)
    if value:
        return value, f"env: {env_var}"
    config = get_config()
    if config.has_option(SECTION, key):
        return config.get(SECTION, key), f"file: {CONFIG_FILE}"
    return default, "default"


def get_setting(key: str) -> str:
    return setting_with_source(key)[0]


def get_int_setting(key: str) -> int:
    """Integer setting, falling back to the default when malformed."""
    try:
        return int(get_setting(key))
    except ValueError:
        return int(SETTINGS[key][1])
