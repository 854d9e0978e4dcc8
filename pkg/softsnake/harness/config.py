"""Experiment configuration files."""

import json
import logging
import math
from pathlib import Path
from typing import Any, Dict, Optional, Union

import yaml
from pydantic import BaseModel, Field, ValidationError, field_validator

from ..core.exceptions import ConfigError
from ..core.params import RobotParams
from ..gaits.rolling import GaitSpec
from ..integrator.config import IntegratorConfig

logger = logging.getLogger(__name__)

YAML_SUFFIXES = (".yaml", ".yml")


class ExperimentConfig(BaseModel):
    """One drop test (``gait`` unset) or one gait experiment."""

    model_config = {"frozen": True, "extra": "forbid"}

    name: str = "experiment"
    robot: RobotParams = Field(default_factory=RobotParams)
    integrator: IntegratorConfig = Field(default_factory=IntegratorConfig)
    gait: Optional[GaitSpec] = None
    drop_height: float = Field(0.6, description="base height at release [m]")
    settle_time: float = Field(2.0, description="drop phase before the gait starts [s]")
    initial_pitch: float = Field(math.pi / 2, description="beta at release; pi/2 lays the snake along +X [rad]")
    contact_enabled: bool = True
    grid_axial: int = Field(31, description="axial contact stations")
    grid_radial: int = Field(10, description="radial contact samples per station")
    output_dir: str = "results"
    seed: int = 0

    @field_validator("drop_height")
    @classmethod
    def validate_height(cls, v):
        if v < 0:
            raise ValueError("drop_height must be non-negative")
        return v

    @field_validator("settle_time")
    @classmethod
    def validate_settle(cls, v):
        if not v > 0:
            raise ValueError("settle_time must be strictly positive")
        return v

    @field_validator("grid_axial")
    @classmethod
    def validate_axial(cls, v):
        if v < 2:
            raise ValueError("grid_axial must be at least 2")
        return v

    @field_validator("grid_radial")
    @classmethod
    def validate_radial(cls, v):
        if v < 1:
            raise ValueError("grid_radial must be at least 1")
        return v

    @property
    def is_drop_test(self) -> bool:
        return self.gait is None

    def with_overrides(self, **updates: Any) -> "ExperimentConfig":
        """Copy with fields replaced; nested fields use dotted keys ("gait.duration").

        Unset values (None) are ignored so CLI flags can be passed straight through.

        Raises:
            ConfigError: if the result does not validate.
        """
        data = self.model_dump(mode="json")
        for key, value in updates.items():
            if value is None:
                continue
            target = data
            *parents, leaf = key.split(".")
            for part in parents:
                if target.get(part) is None:
                    target[part] = {}
                target = target[part]
            target[leaf] = value.value if hasattr(value, "value") else value
        try:
            return ExperimentConfig.model_validate(data)
        except ValidationError as e:
            raise ConfigError(f"Invalid override: {e}", errors=e.errors(include_url=False)) from e


def _read(path: Path) -> Dict[str, Any]:
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"Cannot read config {path}: {e}", path=str(path)) from e
    try:
        if path.suffix.lower() in YAML_SUFFIXES:
            data = yaml.safe_load(text)
        elif path.suffix.lower() == ".json":
            data = json.loads(text)
        else:
            raise ConfigError(f"Unsupported config format: {path.suffix}", path=str(path))
    except (yaml.YAMLError, json.JSONDecodeError) as e:
        raise ConfigError(f"Cannot parse config {path}: {e}", path=str(path)) from e
    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise ConfigError(f"Config {path} must be a mapping", path=str(path))
    return data


def load_config(path: Union[str, Path]) -> ExperimentConfig:
    """Load and validate an experiment config from YAML or JSON."""
    path = Path(path)
    data = _read(path)
    try:
        cfg = ExperimentConfig.model_validate(data)
    except ValidationError as e:
        raise ConfigError(
            f"Invalid config {path}: {e.error_count()} error(s)",
            path=str(path),
            errors=e.errors(include_url=False),
        ) from e
    logger.debug(f"Loaded config {cfg.name} from {path}")
    return cfg


def dump_config(cfg: ExperimentConfig, fmt: str = "yaml") -> str:
    data = cfg.model_dump(mode="json")
    if fmt == "json":
        return json.dumps(data, indent=2, sort_keys=True) + "\n"
    return yaml.safe_dump(data, sort_keys=False, default_flow_style=False)


def save_config(cfg: ExperimentConfig, path: Union[str, Path]) -> None:
    """Write ``cfg`` as YAML or JSON according to the file suffix."""
    path = Path(path)
    fmt = "json" if path.suffix.lower() == ".json" else "yaml"
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(dump_config(cfg, fmt), encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"Cannot write config {path}: {e}", path=str(path)) from e
