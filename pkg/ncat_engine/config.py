"""Runtime settings read from the environment."""

from __future__ import annotations

import os
from collections.abc import Mapping

from pydantic import BaseModel, Field, ValidationError

MAX_CELLS_ENV = "NCAT_GALOIS_MAX_CELLS"
WORKERS_ENV = "NCAT_GALOIS_WORKERS"


class ConfigError(Exception):
    """Raised when an environment variable holds an unusable value."""

    pass


class Settings(BaseModel):
    """Limits shared by the search routines and the suite runner.

    Attributes:
        max_cells: Hard cap on cells per level for any enumerated n-category.
        workers: Default number of worker processes for property suites.
    """

    max_cells: int = Field(default=64, ge=1)
    workers: int = Field(default=1, ge=1)


def load_settings(environ: Mapping[str, str] | None = None) -> Settings:
    """Build settings from ``environ`` (defaults to ``os.environ``).

    Raises:
        ConfigError: If a variable is set to something other than a positive integer.
    """
    env = os.environ if environ is None else environ
    values: dict[str, str] = {}
    if env.get(MAX_CELLS_ENV):
        values["max_cells"] = env[MAX_CELLS_ENV]
    if env.get(WORKERS_ENV):
        values["workers"] = env[WORKERS_ENV]
    try:
        return Settings.model_validate(values)
    except ValidationError as e:
        raise ConfigError(f"invalid environment configuration: {e}") from e
