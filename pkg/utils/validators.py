"""
Validation of scenario configurations and harness inputs.
"""

import json
from pathlib import Path
from typing import Any, Dict, Literal, Optional, Tuple
import logging

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from mathtools.errors import ConfigError

logger = logging.getLogger("validators")

MIN_GRID_POINTS = 24
OUTPUT_FORMATS = ("csv", "json", "both")


class GridSpec(BaseModel):
    """Geometric grid start * ratio^k, k = 0..count-1, heading toward 0 or infinity."""
    model_config = ConfigDict(extra="forbid", frozen=True)

    start: float = Field(..., gt=0, description="First grid value")
    ratio: float = Field(..., gt=0, description="Ratio between consecutive values")
    count: int = Field(..., ge=MIN_GRID_POINTS, description="Number of grid points")
    direction: Literal["zero", "infinity"] = Field(..., description="Where the limit parameter tends")

    @model_validator(mode="after")
    def _ratio_matches_direction(self) -> "GridSpec":
        if self.direction == "zero" and not 0 < self.ratio < 1:
            raise ValueError(f"a grid tending to 0 needs ratio in (0, 1), got {self.ratio}")
        if self.direction == "infinity" and not self.ratio > 1:
            raise ValueError(f"a grid tending to infinity needs ratio > 1, got {self.ratio}")
        return self

    def values(self) -> np.ndarray:
        return self.start * self.ratio ** np.arange(self.count, dtype=float)


class ScenarioConfig(BaseModel):
    """One scenario run; every field not given is filled from the scenario and config.yaml defaults."""
    model_config = ConfigDict(extra="forbid")

    scenario: str = Field(..., description="Scenario id")
    n: int = Field(..., ge=1, description="Dimension (of H^n for hyperbolic scenarios)")
    kernel: Optional[str] = Field(None, description="Kernel id")
    companion_kernel: Optional[str] = Field(None, description="Second kernel id for transfer scenarios")
    measure: Optional[str] = Field(None, description="Measure id")
    function: Optional[str] = Field(None, description="Boundary function id")
    grids: Dict[str, GridSpec] = Field(default_factory=dict)
    trace_tolerance: float = Field(1e-4, gt=0)
    verdict_tolerance: float = Field(5e-3, gt=0)
    output_dir: Optional[str] = None
    format: Literal["csv", "json", "both"] = "both"
    params: Dict[str, Any] = Field(default_factory=dict)


def parse_scenario_config(data: Dict[str, Any]) -> ScenarioConfig:
    """Validate a configuration mapping, raising ConfigError on any violation."""
    try:
        return ScenarioConfig.model_validate(data)
    except ValidationError as e:
        details = "; ".join(
            f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}" for err in e.errors()
        )
        raise ConfigError(f"invalid scenario configuration: {details}") from None


def load_config_file(path: str) -> Dict[str, Any]:
    """Read a JSON configuration document."""
    try:
        with open(path, 'r', encoding='utf-8') as f:
            data = json.load(f)
    except FileNotFoundError:
        raise ConfigError(f"configuration file not found: {path}") from None
    except json.JSONDecodeError as e:
        raise ConfigError(f"configuration file {path} is not valid JSON: {e}") from None
    if not isinstance(data, dict):
        raise ConfigError(f"configuration file {path} must hold a JSON object")
    return data


def validate_output_dir(path: str) -> Tuple[bool, str]:
    """Check that the output directory exists or can be created and is writable."""
    if not path:
        return False, "Output directory cannot be empty"
    target = Path(path)
    try:
        target.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        return False, f"Cannot create output directory {path}: {e}"
    marker = target / ".write_check"
    try:
        marker.write_text("", encoding="utf-8")
        marker.unlink()
    except OSError as e:
        return False, f"Output directory {path} is not writable: {e}"
    return True, ""
