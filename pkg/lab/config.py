"""
Run configs: one JSON document per run, with command-line flags layered on top.
"""

import json
from pathlib import Path

from django.conf import settings


class ConfigError(Exception):
    """A run config that cannot be used as given."""


def read_config(path) -> dict:
    if path is None:
        return {}
    document = json.loads(Path(path).read_text())
    if not isinstance(document, dict):
        raise ConfigError(f"{path}: a run config must be a JSON object")
    return document


def merge(config: dict, **flags) -> dict:
    """Flags that were given (not ``None``) override config fields."""
    merged = dict(config)
    merged.update({key: value for key, value in flags.items() if value is not None})
    return merged


def threads(value: int | None) -> int:
    count = settings.MEDYN_THREADS if value is None else value
    if count < 1:
        raise ConfigError(f"--threads must be at least 1, got {count}")
    return count


def output_dir(value) -> Path:
    return Path(value) if value is not None else Path(settings.MEDYN_OUTPUT_DIR)
