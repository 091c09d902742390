"""Configuration loading and validation."""

import os
from pathlib import Path

import structlog
import yaml

from cnpd.models.config import AnalysisConfig

logger = structlog.get_logger(__name__)

DEFAULT_CONFIG_PATH = "config.yaml"
CONFIG_PATH_ENV = "CNPD_CONFIG_PATH"
PRECISION_ENV = "CNPD_PRECISION_BITS"

_config: AnalysisConfig | None = None


def load_config(config_path: str | Path | None = None) -> AnalysisConfig:
    """Load configuration from a YAML file.

    Args:
        config_path: Path to config file. If None, uses the CNPD_CONFIG_PATH
                    env var, then config.yaml in the current directory.
                    A missing default file yields the built-in defaults.

    Returns:
        Loaded and validated configuration.

    Raises:
        FileNotFoundError: If an explicitly named config file is missing.
        ValueError: If config file or precision override is invalid.
    """
    global _config

    explicit = config_path is not None or CONFIG_PATH_ENV in os.environ
    if config_path is None:
        config_path = os.environ.get(CONFIG_PATH_ENV, DEFAULT_CONFIG_PATH)

    path = Path(config_path)

    raw_config: dict[str, object] | None = None
    if path.exists():
        try:
            with open(path) as f:
                raw_config = yaml.safe_load(f)
        except yaml.YAMLError as e:
            raise ValueError(f"Invalid YAML in config file: {e}") from e
    elif explicit:
        raise FileNotFoundError(f"Configuration file not found: {path}")

    if raw_config is None:
        raw_config = {}

    try:
        config = AnalysisConfig(**raw_config)
    except Exception as e:
        raise ValueError(f"Invalid configuration: {e}") from e

    bits_override = os.environ.get(PRECISION_ENV)
    if bits_override is not None:
        try:
            bits = int(bits_override)
        except ValueError as e:
            raise ValueError(
                f"{PRECISION_ENV} must be an integer, got {bits_override!r}"
            ) from e
        try:
            precision = config.precision.model_copy(update={"bits": bits})
            precision = type(precision).model_validate(precision.model_dump())
        except Exception as e:
            raise ValueError(f"Invalid configuration: {e}") from e
        config = config.model_copy(update={"precision": precision})

    _config = config

    logger.info(
        "config.loaded",
        path=str(path) if path.exists() else None,
        precision_bits=_config.precision.bits,
        max_dimension=_config.circuits.max_dimension,
    )

    return _config


def get_config() -> AnalysisConfig:
    """Get the current configuration, loading it on first use.

    Returns:
        Current configuration.
    """
    if _config is None:
        return load_config()
    return _config


def reset_config() -> None:
    """Reset configuration state. Used for testing."""
    global _config
    _config = None


def working_precision(precision_bits: int | None = None) -> int:
    """Binary precision for a numeric call: the override, else the configured one."""
    if precision_bits is not None:
        return precision_bits
    return get_config().precision.bits
