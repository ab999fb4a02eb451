"""Bound evaluation models."""

from __future__ import annotations

from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, computed_field, field_validator, model_validator

from quibounds._base import CHAIN_SLACK, UNITARY_TOL
from quibounds.exceptions import DomainError, NormalizationError
from quibounds.models.operators import frozen_array
from quibounds.models.states import PureState


class DecompositionSpec(BaseModel):
    """Declared reversible decomposition into four component states.

    Per copy of the initial state the referee obtains ``r1`` copies of
    ``phi_l`` on ``[A1, R1]``, ``r2`` of ``phi_b`` on ``[A2, B2]``, ``r3`` of
    ``phi_r`` on ``[R2, B1]`` and ``r4`` of ``phi_c`` on ``[A3, R3, R4, B3]``.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    rates: tuple[float, float, float, float] = Field(description="Rates r1..r4")
    phi_l: PureState
    phi_b: PureState
    phi_r: PureState
    phi_c: PureState
    family: str | None = Field(default=None, description="Name of the construction, if any")

    @model_validator(mode="after")
    def _check(self) -> DecompositionSpec:
        if any(not np.isfinite(r) or r < 0 for r in self.rates):
            raise DomainError(f"rates must be finite and non-negative, got {self.rates}")
        for name in ("phi_l", "phi_b", "phi_r", "phi_c"):
            if getattr(self, name).is_fragment:
                raise NormalizationError(f"component {name} must be a normalized state")
        return self


class IsometrySplit(BaseModel):
    """One isometry ``V: R -> R1 R2`` of the restricted family.

    Either ``partition`` assigns every basis index of the composite reference
    to register 1 or 2, or ``factor_labels`` sends whole reference subsystems
    to R1. ``pre_rotation`` is an optional unitary on the composite reference
    applied first.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    partition: tuple[int, ...] | None = Field(default=None, description="Register (1 or 2)")
    factor_labels: tuple[str, ...] | None = Field(default=None, description="Labels sent to R1")
    pre_rotation: np.ndarray | None = None

    @field_validator("pre_rotation", mode="before")
    @classmethod
    def _coerce(cls, value: Any) -> np.ndarray | None:
        return None if value is None else frozen_array(value, ndim=2)

    @model_validator(mode="after")
    def _check(self) -> IsometrySplit:
        if (self.partition is None) == (self.factor_labels is None):
            raise DomainError("a split needs exactly one of partition or factor_labels")
        if self.partition is not None and any(p not in (1, 2) for p in self.partition):
            raise DomainError(f"partition entries must be 1 or 2, got {self.partition}")
        if self.pre_rotation is not None:
            m = self.pre_rotation
            d = m.shape[0]
            if m.shape != (d, d):
                raise DomainError(f"pre-rotation shape {m.shape} is not square")
            residual = float(np.max(np.abs(m @ m.conj().T - np.eye(d))))
            if residual > UNITARY_TOL:
                raise DomainError(f"pre-rotation is not unitary (residual {residual:.3e})")
        return self

    def describe(self) -> str:
        if self.factor_labels is not None:
            return f"R1={{{','.join(self.factor_labels)}}}"
        assert self.partition is not None
        ones = [str(i) for i, p in enumerate(self.partition) if p == 1]
        rotated = " rotated" if self.pre_rotation is not None else ""
        return f"R1=span{{{','.join(ones)}}}{rotated}"


class UNewBreakdown(BaseModel):
    """``u_new`` with the two merging rates of the subspace exchange."""

    model_config = ConfigDict(frozen=True)

    u_new: float = Field(description="S(R|A) on the stretched state")
    merge_a: float = Field(description="S(A'|BB') on the stretched state")
    merge_b: float = Field(description="S(B'|A) on the stretched state")
    identity_residual: float = Field(ge=0)
    gap: float = Field(description="u1 - u_new, a mutual information on the stretched state")
    d_common: int = Field(ge=0)


class ZetaBounds(BaseModel):
    """Closed-form bounds of the zeta family."""

    model_config = ConfigDict(frozen=True)

    l1: float
    l_new: float
    u_new: float
    u1: float


class BoundReport(BaseModel):
    """All bounds for one state, with provenance and the ordering check."""

    model_config = ConfigDict(frozen=True)

    l1: float
    l2_found: float
    l_new: float | None = None
    u_new: float | None = None
    u1: float
    provenance: dict[str, str] = Field(default_factory=dict)
    slack: float = CHAIN_SLACK

    def _present(self) -> list[tuple[str, float]]:
        values = [("l1", self.l1), ("l_new", self.l_new), ("u_new", self.u_new), ("u1", self.u1)]
        return [(name, v) for name, v in values if v is not None]

    @computed_field  # type: ignore[prop-decorator]
    @property
    def chain_violations(self) -> list[str]:
        """Pairs that break ``l1 <= l_new <= u_new <= u1`` or bracket l2_found."""
        present = self._present()
        bad = [
            f"{lo}={vlo:.12g} > {hi}={vhi:.12g}"
            for i, (lo, vlo) in enumerate(present)
            for hi, vhi in present[i + 1 :]
            if vlo > vhi + self.slack
        ]
        for hi, vhi in present:
            if hi in ("u_new", "u1") and self.l2_found > vhi + self.slack:
                bad.append(f"l2_found={self.l2_found:.12g} > {hi}={vhi:.12g}")
        if self.l1 > self.l2_found + self.slack:
            bad.append(f"l1={self.l1:.12g} > l2_found={self.l2_found:.12g}")
        return bad

    @computed_field  # type: ignore[prop-decorator]
    @property
    def chain_ok(self) -> bool:
        return not self.chain_violations

    @computed_field  # type: ignore[prop-decorator]
    @property
    def qui_interval(self) -> tuple[float, float]:
        """Best lower and upper values among the present bounds."""
        lower = max(v for v in (self.l1, self.l2_found, self.l_new) if v is not None)
        upper = min(v for v in (self.u_new, self.u1) if v is not None)
        return (lower, upper)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def qci_interval(self) -> tuple[float, float]:
        """Common information ``S(AB) - QUI`` implied by the QUI interval."""
        lower, upper = self.qui_interval
        return (self.u1 - upper, self.u1 - lower)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def pinned(self) -> bool:
        lower, upper = self.qui_interval
        return abs(upper - lower) <= self.slack

    def values(self) -> dict[str, float | None]:
        return {
            "l1": self.l1,
            "l2_found": self.l2_found,
            "l_new": self.l_new,
            "u_new": self.u_new,
            "u1": self.u1,
        }
