"""Parameter sweep configuration models."""

from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field, model_validator

from quibounds._base import DEFAULT_GRID_POINTS, DEFAULT_WORKERS
from quibounds.exceptions import DomainError
from quibounds.models.enums import BoundColumn


class _GridConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    grid_points: int = Field(default=DEFAULT_GRID_POINTS, description="Points including ends")
    x_min: float = 0.0
    x_max: float = 1.0
    emit_closed_form: bool = True
    emit_numeric: bool = True
    workers: int = Field(default=DEFAULT_WORKERS, description="Concurrent grid evaluations")

    @model_validator(mode="after")
    def _check_grid(self) -> _GridConfig:
        if self.grid_points < 2:
            raise DomainError(f"grid_points must be at least 2, got {self.grid_points}")
        if not (0.0 <= self.x_min < self.x_max <= 1.0):
            raise DomainError(
                f"need 0 <= x_min < x_max <= 1, got x_min={self.x_min}, x_max={self.x_max}"
            )
        if not (self.emit_closed_form or self.emit_numeric):
            raise DomainError("enable at least one of closed-form or numeric columns")
        if self.workers < 1:
            raise DomainError(f"workers must be at least 1, got {self.workers}")
        return self


class SweepConfig(_GridConfig):
    """Zeta-family bound sweep."""

    outputs: tuple[BoundColumn, ...] = Field(
        default=tuple(BoundColumn), description="Bound columns to emit, in canonical order"
    )

    @model_validator(mode="after")
    def _check_outputs(self) -> SweepConfig:
        if not self.outputs:
            raise DomainError("select at least one bound column")
        return self

    @property
    def columns(self) -> list[BoundColumn]:
        return [c for c in BoundColumn if c in self.outputs]


class QsrSweepConfig(_GridConfig):
    """Xi-family rotation-rate sweep."""

    per_starter: bool = Field(default=False, description="Also emit u1..u3 and v1..v3")
