"""Quantum state rotation rate models."""

from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field, computed_field

from quibounds.models.enums import Provenance


class QsrRateReport(BaseModel):
    """Merge-and-send rates ``u`` and subspace-rotation rates ``v`` per starter.

    Entry ``k`` of ``u`` and ``v`` belongs to starter ``k + 1``.
    """

    model_config = ConfigDict(frozen=True)

    u: tuple[float, float, float] = Field(description="u_1..u_3 for the three starters")
    v: tuple[float, float, float] = Field(description="v_1..v_3 for the three starters")
    provenance: Provenance = Provenance.NUMERIC

    @computed_field  # type: ignore[prop-decorator]
    @property
    def u_old_min(self) -> float:
        return min(self.u)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def v_new_min(self) -> float:
        return min(self.v)

    def max_deviation(self, other: QsrRateReport) -> float:
        """Largest absolute difference over the six rates."""
        pairs = zip(self.u + self.v, other.u + other.v)
        return max(abs(a - b) for a, b in pairs)
