"""Entanglement accounting for the single-shot exchange."""

from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field, computed_field

from quibounds.models.enums import TeleportMechanism
from quibounds.models.states import PureState


class LedgerEntry(BaseModel):
    """One costed step of the protocol."""

    model_config = ConfigDict(frozen=True)

    step: str = Field(description="Human-readable step label")
    ebits: float = Field(ge=0, description="log2 of the teleported support dimension")
    mechanism: TeleportMechanism
    integer_ebits: int = Field(ge=0, description="Whole ebits when teleporting qubit by qubit")
    cc_bits: int = Field(ge=0, description="Classical bits sent alongside")


class EbitLedger(BaseModel):
    """Ordered protocol steps with their entanglement cost."""

    model_config = ConfigDict(frozen=True)

    entries: tuple[LedgerEntry, ...] = ()

    @computed_field  # type: ignore[prop-decorator]
    @property
    def total(self) -> float:
        return sum(entry.ebits for entry in self.entries)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def total_integer(self) -> int:
        return sum(entry.integer_ebits for entry in self.entries)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def total_cc_bits(self) -> int:
        return sum(entry.cc_bits for entry in self.entries)


class SseResult(BaseModel):
    """Outcome of one exact subspace exchange."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    final: PureState
    ledger: EbitLedger
    distance: float = Field(ge=0, description="Trace distance to the exchanged state")
    d_common: int = Field(ge=0)
    d_effective: int = Field(ge=1, description="Support dimension of each teleported register")
    naive_cost: float = Field(ge=0, description="Cost of teleporting A and B whole")

    @computed_field  # type: ignore[prop-decorator]
    @property
    def savings(self) -> float:
        return self.naive_cost - self.ledger.total
