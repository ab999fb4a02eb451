"""Operator and density operator models."""

from __future__ import annotations

from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from quibounds._base import HERMITIAN_TOL, TRACE_TOL
from quibounds.exceptions import (
    DimMismatchError,
    DomainError,
    NormalizationError,
    NotHermitianError,
)
from quibounds.models.layout import SubsystemLayout


def frozen_array(value: Any, *, ndim: int) -> np.ndarray:
    """Copy ``value`` into a read-only complex array of the given rank.

    Raises:
        DimMismatchError: If the rank differs from ``ndim``.
        DomainError: If an entry is NaN or infinite.
    """
    arr = np.array(value, dtype=np.complex128)
    if arr.ndim != ndim:
        raise DimMismatchError(f"expected a rank-{ndim} array, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise DomainError("array entries must be finite")
    arr.flags.writeable = False
    return arr


def hermiticity_residual(matrix: np.ndarray) -> float:
    """Largest entry of ``|M - M^dagger|``."""
    if matrix.size == 0:
        return 0.0
    return float(np.max(np.abs(matrix - matrix.conj().T)))


class Operator(BaseModel):
    """Square complex matrix acting on a layout."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    layout: SubsystemLayout = Field(description="Subsystems the matrix acts on")
    matrix: np.ndarray = Field(description="Square matrix of size total_dim x total_dim")

    @field_validator("matrix", mode="before")
    @classmethod
    def _coerce_matrix(cls, value: Any) -> np.ndarray:
        return frozen_array(value, ndim=2)

    @model_validator(mode="after")
    def _check_shape(self) -> Operator:
        d = self.layout.total_dim
        if self.matrix.shape != (d, d):
            raise DimMismatchError(
                f"matrix shape {self.matrix.shape} does not match layout dimension {d}"
            )
        return self

    @classmethod
    def identity(cls, layout: SubsystemLayout) -> Operator:
        return cls(layout=layout, matrix=np.eye(layout.total_dim))

    def dagger(self) -> Operator:
        return Operator(layout=self.layout, matrix=self.matrix.conj().T)

    def unitarity_residual(self) -> float:
        """Largest entry of ``|U U^dagger - 1|``."""
        d = self.layout.total_dim
        return float(np.max(np.abs(self.matrix @ self.matrix.conj().T - np.eye(d))))


class DensityOperator(Operator):
    """Operator that is Hermitian with unit trace.

    Positivity is checked when the spectrum is computed, so a slightly
    negative eigenvalue produced by round-off does not fail construction.
    """

    @model_validator(mode="after")
    def _check_density(self) -> DensityOperator:
        residual = hermiticity_residual(self.matrix)
        if residual > HERMITIAN_TOL:
            raise NotHermitianError(f"Hermiticity residual {residual:.3e} exceeds {HERMITIAN_TOL}")
        trace = complex(np.trace(self.matrix))
        if abs(trace - 1.0) > TRACE_TOL:
            raise NormalizationError(f"trace {trace.real:.12g} differs from 1")
        return self

    @property
    def hermitian_part(self) -> np.ndarray:
        """``(rho + rho^dagger) / 2``."""
        result: np.ndarray = (self.matrix + self.matrix.conj().T) / 2
        return result
