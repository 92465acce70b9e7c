"""Sweep definition for figure reproduction runs."""
from __future__ import annotations

import math
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from pydantic_core import PydanticCustomError

from ecs.config.manager import ConfigManager
from ecs.core.errors import EcsError
from ecs.utils.paths import resolve_path

FIGURES = (2, 3, 4, 5, 6, 7)
GRID_DECIMALS = 12
FIGURE7_DEFAULT_STEP = 0.01
# error type for a range the chosen figure needs but the sweep omits
MISSING_RANGE = "missing_range"
# absorbs float error in max/step before flooring
_FLOOR_SLACK = 1e-9

GridPoint = Dict[str, float]


class EmptyGrid(EcsError, ValueError):
    """Sweep definition yields no grid points."""


class SweepSpec(BaseModel):
    """One figure sweep: grid ranges plus output target."""

    model_config = ConfigDict(
        extra="allow",
        validate_assignment=True,
        validate_default=True,
        str_strip_whitespace=True,
    )

    figure: int = Field(..., description="圖號（2 到 7）")
    alpha_max: Optional[float] = Field(default=None, gt=0.0, description="圖 2 的 alpha 上限")
    step: Optional[float] = Field(default=None, gt=0.0, description="圖 2 的 alpha 步長或圖 7 的 p' 步長")
    p_values: List[float] = Field(default_factory=list, description="圖 3 到 6 的 p 清單")
    eta_step: Optional[float] = Field(default=None, gt=0.0, le=1.0, description="圖 3 到 6 的 eta 步長")
    eta_values: List[float] = Field(default_factory=list, description="圖 7 的 eta 清單")
    out: str = Field(..., description="輸出檔案路徑")
    format: Literal["csv", "json"] = Field(default="csv", description="輸出格式")
    workers: int = Field(default=1, ge=1, description="平行計算的 worker 數")

    @model_validator(mode="before")
    @classmethod
    def default_pprime_step(cls, data: Any) -> Any:
        if isinstance(data, dict) and data.get("figure") == 7 and data.get("step") is None:
            data = {**data, "step": FIGURE7_DEFAULT_STEP}
        return data

    @field_validator("figure")
    @classmethod
    def validate_figure(cls, value: int) -> int:
        if value not in FIGURES:
            raise ValueError(f"figure 必須是 2 到 7，收到 {value}")
        return value

    @field_validator("p_values")
    @classmethod
    def validate_p_values(cls, value: List[float]) -> List[float]:
        for p in value:
            if not 0.0 < p < 1.0:
                raise ValueError(f"p 必須位於 (0, 1)，收到 {p}")
        return value

    @field_validator("eta_values")
    @classmethod
    def validate_eta_values(cls, value: List[float]) -> List[float]:
        for eta in value:
            if not 0.0 <= eta <= 1.0:
                raise ValueError(f"eta 必須位於 [0, 1]，收到 {eta}")
        return value

    @field_validator("out")
    @classmethod
    def validate_out(cls, value: str) -> str:
        if not value.strip():
            raise ValueError("out 不能為空")
        return value

    @model_validator(mode="after")
    def check_required_ranges(self) -> "SweepSpec":
        if self.figure == 2 and (self.alpha_max is None or self.step is None):
            raise PydanticCustomError(MISSING_RANGE, "圖 2 需要 alpha_max 與 step")
        if 3 <= self.figure <= 6 and self.eta_step is None:
            raise PydanticCustomError(MISSING_RANGE, "圖 {figure} 需要 eta_step", {"figure": self.figure})
        if self.figure == 7 and self.step is None:
            raise PydanticCustomError(MISSING_RANGE, "圖 7 需要 step")
        if self.figure == 7 and self.step is not None and self.step > 1.0:
            raise ValueError("圖 7 的 step 不能大於 1")
        return self

    @property
    def output_path(self) -> Path:
        return resolve_path(self.out)

    def grid(self) -> List[GridPoint]:
        """Ordered grid points; raises :class:`EmptyGrid` when nothing would be computed."""
        if self.figure == 2:
            points = [{"alpha": value} for value in _ticks(self.alpha_max, self.step, start=0)]
        elif self.figure == 7:
            points = [
                {"pprime": pprime, "eta": float(eta)}
                for eta in self.eta_values
                for pprime in _ticks(1.0, self.step, start=0)
            ]
        else:
            points = [
                {"p": float(p), "eta": eta}
                for p in self.p_values
                for eta in _ticks(1.0, self.eta_step, start=1)
            ]
        if not points:
            raise EmptyGrid(f"圖 {self.figure} 的網格為空")
        return points


def _ticks(upper: float, step: float, *, start: int) -> List[float]:
    count = math.floor(upper / step + _FLOOR_SLACK)
    return [round(k * step, GRID_DECIMALS) for k in range(start, count + 1)]


def _resolve_out(raw_config: Dict[str, Any], _config_path: Path) -> Dict[str, Any]:
    processed = dict(raw_config)
    out = processed.get("out")
    if isinstance(out, str) and out.strip():
        processed["out"] = str(resolve_path(out.strip()))
    return processed


def load_sweep_spec(raw_path: str | Path, overrides: Dict[str, Any] | None = None) -> SweepSpec:
    """Load a YAML/JSON sweep file; ``overrides`` (non-None values) win over file values."""
    manager = ConfigManager(
        resolve_path(raw_path),
        SweepSpec,
        preprocessors=(_resolve_out,),
        overrides=overrides,
    )
    return manager.load()


__all__ = ["EmptyGrid", "FIGURES", "GridPoint", "MISSING_RANGE", "SweepSpec", "load_sweep_spec"]
