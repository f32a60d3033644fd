"""
Configuration module.

The active configuration starts from the documented defaults in
settings, then takes overrides from an optional YAML file, the
HAARMOMENTS_CAP environment variable and command line flags, in that
order. Library code reads it through current_config().
"""

import os
import threading
from dataclasses import asdict, dataclass, replace
from typing import Any, Dict, Mapping, Optional

import yaml
from loguru import logger

from haarmoments import settings
from haarmoments.output.error_handler import ArgumentError
from haarmoments.utils.obj_utils import match_param

OUTPUT_FORMATS = ("text", "json")
MIN_DENSE_CAP = 16


@dataclass(frozen=True)
class Config:
    """Immutable snapshot of every tunable value."""

    output_format: str = settings.output_format
    dense_cap: int = settings.dense_size_cap
    default_seed: int = settings.default_seed
    float_precision: int = settings.float_precision
    console_log_level: int = settings.console_log_level
    character_table_cap: int = settings.character_table_cap
    mc_chunks: int = settings.mc_chunks
    mc_workers: int = settings.mc_workers
    mc_batch_size: int = settings.mc_batch_size
    mc_samples: int = settings.mc_samples
    mc_z_threshold: float = settings.mc_z_threshold
    quadrature_max_n: int = settings.quadrature_max_n
    quadrature_max_points: int = settings.quadrature_max_points

    def __post_init__(self) -> None:
        if self.output_format not in OUTPUT_FORMATS:
            raise ArgumentError(
                "bad_config",
                "output_format",
                self.output_format,
                f"expected one of {', '.join(OUTPUT_FORMATS)}"
            )
        if self.dense_cap < MIN_DENSE_CAP:
            raise ArgumentError(
                "bad_config",
                "dense_cap",
                self.dense_cap,
                f"must be at least {MIN_DENSE_CAP}"
            )
        for name in (
                "float_precision", "character_table_cap", "mc_chunks",
                "mc_workers", "mc_batch_size", "mc_samples",
                "quadrature_max_n", "quadrature_max_points"
        ):
            if getattr(self, name) < 1:
                raise ArgumentError(
                    "bad_config", name, getattr(self, name), "must be positive"
                )
        if self.mc_z_threshold <= 0:
            raise ArgumentError(
                "bad_config",
                "mc_z_threshold",
                self.mc_z_threshold,
                "must be positive"
            )

    def updated(self, overrides: Mapping[str, Any]) -> "Config":
        """
        Returns a copy with overrides cast to each field's type.

        :param overrides: Field names mapped to new values; None values
            are ignored
        :return: New config
        :raises ArgumentError: On unknown fields or uncastable values
        """
        defaults = asdict(self)
        changes: Dict[str, Any] = {}
        for name, value in overrides.items():
            if value is None:
                continue
            if name not in defaults:
                raise ArgumentError(
                    "bad_config", name, value, "unknown configuration key"
                )
            try:
                changes[name] = match_param(defaults[name], value)
            except ValueError as e:
                raise ArgumentError("bad_config", name, value, str(e)) from e

        return replace(self, **changes)


def load_config(
        config_path: Optional[str] = None,
        environ: Optional[Mapping[str, str]] = None,
        overrides: Optional[Mapping[str, Any]] = None
) -> Config:
    """
    Builds a config from every override source.

    :param config_path: Optional YAML file whose keys are field names
    :param environ: Environment mapping, defaults to os.environ
    :param overrides: Command line overrides, applied last
    :return: Resolved config
    :raises ArgumentError: When a source holds an invalid value
    """
    config = Config()

    if config_path is not None:
        logger.debug("Loading configuration file {}", config_path)
        try:
            with open(config_path, "r", encoding="utf-8") as file:
                file_dict = yaml.safe_load(file) or {}
        except yaml.YAMLError as e:
            raise ArgumentError("bad_config", "--config", config_path, e) from e
        except OSError as e:
            raise ArgumentError(
                "bad_config", "--config", config_path, e.strerror
            ) from e
        if not isinstance(file_dict, dict):
            raise ArgumentError(
                "bad_config", "--config", config_path, "expected a mapping"
            )
        config = config.updated(file_dict)

    environ = os.environ if environ is None else environ
    cap = environ.get(settings.cap_environment_variable)
    if cap is not None and cap.strip():
        logger.debug("Dense cap overridden by environment: {}", cap)
        config = config.updated({"dense_cap": cap})

    if overrides:
        config = config.updated(overrides)

    return config


_config_lock = threading.Lock()
_active_config = Config()


def current_config() -> Config:
    """
    Gets the active config.

    :return: Active config
    """
    return _active_config


def use_config(config: Config) -> Config:
    """
    Installs a config as the active one.

    :param config: New active config
    :return: The previously active config
    """
    global _active_config  # pylint: disable=global-statement
    with _config_lock:
        previous = _active_config
        _active_config = config

    logger.trace("Installed config {}", config)
    return previous
