import json
import logging
import os
from dataclasses import asdict, dataclass, replace
from typing import Any, Dict, Mapping, Optional

import funcy
from marshmallow import RAISE, Schema, fields, validate
from marshmallow import ValidationError as SchemaValidationError
from singleton import Singleton
from toolz import dicttoolz

from torus_pmra.exceptions import ConfigurationError

logger = logging.getLogger(__name__)

CONFIG_ENV_VAR = "TORUS_PMRA_CONFIG"

DEFAULT_GRID_BY_DIMENSION = {1: 256, 2: 64, 3: 16}
FALLBACK_GRID = 8


@dataclass(frozen=True)
class RunConfig:
    grid: Optional[int] = None
    radius: int = 64
    depth: int = 20
    tol: float = 1e-8
    level_cap: int = 2 ** 20
    out: Optional[str] = None
    seed: int = 20240607
    workers: int = 1

    def grid_for(self, n: int) -> int:
        """Grid resolution for dimension n (explicit value wins)."""
        if self.grid is not None:
            return self.grid
        return DEFAULT_GRID_BY_DIMENSION.get(n, FALLBACK_GRID)

    def with_overrides(self, **overrides: Any) -> "RunConfig":
        return replace(self, **funcy.select_values(lambda v: v is not None, overrides))


class RunConfigSchema(Schema):
    class Meta:
        unknown = RAISE

    grid = fields.Integer(allow_none=True, validate=validate.Range(min=2))
    radius = fields.Integer(validate=validate.Range(min=1))
    depth = fields.Integer(validate=validate.Range(min=1))
    tol = fields.Float(validate=validate.Range(min=0, min_inclusive=False))
    level_cap = fields.Integer(validate=validate.Range(min=1))
    out = fields.String(allow_none=True)
    seed = fields.Integer(validate=validate.Range(min=0))
    workers = fields.Integer(validate=validate.Range(min=1))


def _validated(values: Mapping[str, Any], origin: str) -> Dict[str, Any]:
    try:
        return RunConfigSchema().load(dict(values))
    except SchemaValidationError as e:
        raise ConfigurationError(f"Invalid configuration in {origin}: {e.messages}")


def load_config(path: str) -> Dict[str, Any]:
    """
    Reads a JSON config file and validates its keys.

    Args:
        path: the file to read

    Returns:
        The validated (partial) settings found in the file.
    """
    try:
        with open(path, "r", encoding="utf-8") as f:
            raw = json.load(f)
    except OSError as e:
        raise ConfigurationError(f"Cannot read config file {path}: {e}")
    except json.JSONDecodeError as e:
        raise ConfigurationError(f"Config file {path} is not valid JSON: {e}")
    if not isinstance(raw, dict):
        raise ConfigurationError(f"Config file {path} must hold a JSON object")
    return _validated(raw, path)


def resolve_config(
    flags: Optional[Mapping[str, Any]] = None,
    config_path: Optional[str] = None,
    environ: Optional[Mapping[str, str]] = None,
) -> RunConfig:
    """
    Merges settings with precedence flags > config file > env var file > defaults.
    """
    environ = os.environ if environ is None else environ
    layers = [asdict(RunConfig())]

    env_path = environ.get(CONFIG_ENV_VAR)
    if env_path:
        logger.debug("Loading configuration named by %s: %s", CONFIG_ENV_VAR, env_path)
        layers.append(load_config(env_path))
    if config_path:
        layers.append(load_config(config_path))
    if flags:
        explicit = funcy.select_values(lambda v: v is not None, dict(flags))
        layers.append(_validated(explicit, "command line flags"))

    return RunConfig(**dicttoolz.merge(*layers))


class ConfigManager(metaclass=Singleton):
    def __init__(self) -> None:
        self._config: Optional[RunConfig] = None

    def set_default_config(self, config: RunConfig) -> None:
        """
        Sets the process-wide configuration
        Args:
            config:
        """
        if not isinstance(config, RunConfig):
            raise ConfigurationError("Invalid configuration supplied")

        self._config = config

    def get_default_config(self) -> RunConfig:
        """
        Returns the current configuration, or the defaults if none was set
        """
        if not self._config:
            return RunConfig()

        return self._config

    def reset(self) -> None:
        self._config = None
