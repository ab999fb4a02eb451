"""Pure state and state-family parameter models."""

from __future__ import annotations

import math
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, computed_field, field_validator, model_validator

from quibounds._base import SCHMIDT_CUTOFF, STATE_NORM_TOL
from quibounds.exceptions import DimMismatchError, DomainError, NormalizationError
from quibounds.models.layout import SubsystemLayout
from quibounds.models.operators import frozen_array


class PureState(BaseModel):
    """Labeled amplitude vector over a subsystem layout.

    Regular states are normalized to within ``STATE_NORM_TOL`` and rescaled to
    unit norm on construction. Fragments (``is_fragment=True``) hold the
    sub-normalized pieces of a decomposition and are never rescaled.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    layout: SubsystemLayout = Field(description="Subsystems in amplitude index order")
    amplitudes: np.ndarray = Field(description="Row-major complex amplitude vector")
    is_fragment: bool = Field(default=False, description="Sub-normalized decomposition piece")

    @model_validator(mode="before")
    @classmethod
    def _normalize(cls, data: Any) -> Any:
        if not isinstance(data, dict) or data.get("amplitudes") is None:
            return data
        amps = np.array(data["amplitudes"], dtype=np.complex128).ravel()
        if not np.all(np.isfinite(amps)):
            raise NormalizationError("amplitudes must be finite")
        norm = float(np.linalg.norm(amps))
        if data.get("is_fragment", False):
            if norm > 1.0 + STATE_NORM_TOL:
                raise NormalizationError(f"fragment norm {norm:.12g} exceeds 1")
        else:
            if abs(norm - 1.0) > STATE_NORM_TOL:
                raise NormalizationError(f"state norm {norm:.12g} differs from 1")
            amps = amps / norm
        return {**data, "amplitudes": amps}

    @field_validator("amplitudes", mode="before")
    @classmethod
    def _coerce_amplitudes(cls, value: Any) -> np.ndarray:
        return frozen_array(value, ndim=1)

    @model_validator(mode="after")
    def _check_length(self) -> PureState:
        if self.amplitudes.shape[0] != self.layout.total_dim:
            raise DimMismatchError(
                f"{self.amplitudes.shape[0]} amplitudes for layout dimension "
                f"{self.layout.total_dim}"
            )
        return self

    @classmethod
    def fragment(cls, layout: SubsystemLayout, amplitudes: Any) -> PureState:
        """Construct a sub-normalized fragment."""
        return cls(layout=layout, amplitudes=amplitudes, is_fragment=True)

    @property
    def tensor(self) -> np.ndarray:
        """Amplitudes reshaped to one axis per subsystem."""
        return self.amplitudes.reshape(self.layout.dims)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def inner(self, other: PureState) -> complex:
        """``<self|other>``; layouts must match."""
        if self.layout != other.layout:
            raise DimMismatchError("inner product of states on different layouts")
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def distance(self, other: PureState) -> float:
        """Euclidean distance between amplitude vectors on the same layout."""
        if self.layout != other.layout:
            raise DimMismatchError("distance between states on different layouts")
        return float(np.linalg.norm(self.amplitudes - other.amplitudes))

    def amplitude(self, *index: int) -> complex:
        """Amplitude at a multi-index."""
        return complex(self.tensor[index])


class ZetaParams(BaseModel):
    """Four non-negative coefficients of the zeta and xi families."""

    model_config = ConfigDict(frozen=True)

    c: tuple[float, float, float, float] = Field(description="Coefficients c0..c3")

    @model_validator(mode="after")
    def _check(self) -> ZetaParams:
        if any(not math.isfinite(ci) or ci < 0 for ci in self.c):
            raise DomainError(f"coefficients must be finite and non-negative, got {self.c}")
        total = sum(ci * ci for ci in self.c)
        if abs(total - 1.0) > STATE_NORM_TOL:
            raise NormalizationError(f"sum of squared coefficients is {total:.12g}, not 1")
        return self

    @property
    def p(self) -> tuple[float, float, float, float]:
        """Squared coefficients ``c_i^2``."""
        c0, c1, c2, c3 = self.c
        return (c0 * c0, c1 * c1, c2 * c2, c3 * c3)


class SweepParam(BaseModel):
    """Sweep coordinate x in [0, 1]."""

    model_config = ConfigDict(frozen=True)

    x: float

    @model_validator(mode="after")
    def _check(self) -> SweepParam:
        if not 0.0 <= self.x <= 1.0:
            raise DomainError(f"sweep parameter x={self.x} outside [0, 1]")
        return self


class SchmidtDecomposition(BaseModel):
    """Schmidt form of a pure state across a bipartite cut.

    ``left[:, i]`` and ``right[:, i]`` are the Schmidt vectors paired with
    ``coefficients[i]``; vectors live on ``left_layout`` and ``right_layout``.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    coefficients: np.ndarray
    left: np.ndarray
    right: np.ndarray
    left_layout: SubsystemLayout
    right_layout: SubsystemLayout

    @computed_field  # type: ignore[prop-decorator]
    @property
    def rank(self) -> int:
        return int(np.count_nonzero(self.coefficients > SCHMIDT_CUTOFF))

    def reconstruct(self) -> np.ndarray:
        """Amplitudes in ``left_layout + right_layout`` order."""
        matrix = (self.left * self.coefficients) @ self.right.T
        result: np.ndarray = matrix.ravel()
        return result
