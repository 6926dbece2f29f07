"""Run configuration: one key per line, nested by dotted keys, overridable from flags."""
import logging
import math
from pathlib import Path
from typing import Any, Dict, Iterable, Mapping, Optional

import yaml
from pydantic import BaseModel, ConfigDict, Field, PositiveFloat, ValidationError

from wellcs.core.config import settings
from wellcs.core.exceptions import ConfigurationError
from wellcs.domain.value_objects import GCS, SpaceGrid, StateSpec, TimeGrid, ValidityThresholds, WellParams

logger = logging.getLogger(__name__)


class SpaceSection(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    points: int = Field(default=settings.DEFAULT_SPACE_POINTS, ge=2)


class TolerancesSection(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    rel_tail_tol: float = Field(default=settings.REL_TAIL_TOL, gt=0.0, le=1e-6)
    hermiticity: PositiveFloat = settings.HERMITICITY_TOL
    validity: ValidityThresholds = Field(default_factory=ValidityThresholds)


class OutputSection(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    path: str = "-"


def _figure_state() -> GCS:
    return GCS(n0=500.0, sigma0=5.0, phi0=math.pi / 2.0)


def _figure_times() -> TimeGrid:
    return TimeGrid(start=0.0, step=5e-5, count=1001)


class RunConfig(BaseModel):
    """Everything one CLI run needs; defaults reproduce the first figure."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    well: WellParams = Field(default_factory=WellParams)
    state: StateSpec = Field(default_factory=_figure_state)
    time: TimeGrid = Field(default_factory=_figure_times)
    space: SpaceSection = Field(default_factory=SpaceSection)
    tolerances: TolerancesSection = Field(default_factory=TolerancesSection)
    output: OutputSection = Field(default_factory=OutputSection)

    def space_grid(self) -> SpaceGrid:
        return SpaceGrid(params=self.well, count=self.space.points)


def expand_dotted(flat: Mapping[str, Any]) -> Dict[str, Any]:
    """{"well.mass": 1.0} -> {"well": {"mass": 1.0}}; nested mappings are merged."""
    nested: Dict[str, Any] = {}
    for key, value in flat.items():
        if isinstance(value, Mapping):
            value = expand_dotted(value)
        parts = str(key).split(".")
        node = nested
        for part in parts[:-1]:
            child = node.setdefault(part, {})
            if not isinstance(child, dict):
                raise ConfigurationError(f"Key '{key}' conflicts with scalar value at '{part}'")
            node = child
        leaf = parts[-1]
        if isinstance(value, dict) and isinstance(node.get(leaf), dict):
            node[leaf] = _merge(node[leaf], value)
        else:
            node[leaf] = value
    return nested


def _merge(base: Dict[str, Any], update: Mapping[str, Any]) -> Dict[str, Any]:
    merged = dict(base)
    for key, value in update.items():
        if isinstance(value, Mapping) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def parse_run_config(text: str, overrides: Optional[Mapping[str, Any]] = None) -> RunConfig:
    try:
        raw = yaml.safe_load(text) if text.strip() else {}
    except yaml.YAMLError as e:
        raise ConfigurationError(f"Run configuration is not valid YAML: {e}")
    if raw is None:
        raw = {}
    if not isinstance(raw, Mapping):
        raise ConfigurationError("Run configuration must be a mapping of dotted keys")

    data = expand_dotted(raw)
    if overrides:
        data = _merge(data, expand_dotted({k: v for k, v in overrides.items() if v is not None}))
    # Partial sections are completed from the defaults; a state of another kind starts from scratch.
    defaults = RunConfig().model_dump()
    state = data.get("state")
    if isinstance(state, Mapping) and state.get("kind", defaults["state"]["kind"]) != defaults["state"]["kind"]:
        defaults.pop("state")
    data = _merge(defaults, data)

    try:
        return RunConfig.model_validate(data)
    except ValidationError as e:
        raise ConfigurationError(f"Invalid run configuration: {e.error_count()} error(s)\n{e}")


def load_run_config(path: Optional[str], overrides: Optional[Mapping[str, Any]] = None) -> RunConfig:
    text = ""
    if path is not None:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as e:
            raise ConfigurationError(f"Cannot read run configuration '{path}': {e}")

    config = parse_run_config(text, overrides)
    logger.debug(
        "Run configuration loaded",
        extra={"path": path, "state_kind": config.state.kind, "time_samples": config.time.count},
    )
    return config


def parse_overrides(pairs: Iterable[str]) -> Dict[str, Any]:
    """["state.n0=200", "time.count=11"] -> {"state.n0": 200, "time.count": 11}; values are YAML scalars."""
    overrides: Dict[str, Any] = {}
    for pair in pairs:
        key, sep, value = pair.partition("=")
        if not sep or not key.strip():
            raise ConfigurationError(f"Override '{pair}' is not of the form key=value")
        try:
            overrides[key.strip()] = yaml.safe_load(value) if value.strip() else None
        except yaml.YAMLError as e:
            raise ConfigurationError(f"Override '{pair}' has an unreadable value: {e}")
    return overrides
