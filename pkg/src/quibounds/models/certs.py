"""Common subspace certificates and stretched states."""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from quibounds._base import ORTHONORMAL_TOL, UNITARY_TOL, VERIFY_TOL
from quibounds.exceptions import DimMismatchError, DomainError
from quibounds.models.operators import frozen_array
from quibounds.models.states import PureState


def _check_unitary(name: str, matrix: np.ndarray, dim: int) -> None:
    if matrix.shape != (dim, dim):
        raise DimMismatchError(f"{name} has shape {matrix.shape}, expected ({dim}, {dim})")
    residual = float(np.max(np.abs(matrix @ matrix.conj().T - np.eye(dim))))
    if residual > UNITARY_TOL:
        raise DomainError(f"{name} is not unitary (residual {residual:.3e})")


def _check_residuals(
    verified: bool, residuals: Sequence[float | None], tolerance: float
) -> None:
    if any(r is None for r in residuals):
        if verified:
            raise DomainError("a certificate cannot be verified without residuals")
        return
    passes = all(r is not None and r <= tolerance for r in residuals)
    if verified != passes:
        raise DomainError(
            f"verified={verified} inconsistent with residuals {list(residuals)} "
            f"at tolerance {tolerance}"
        )


def _basis_rows(indices: Sequence[int], dim: int) -> np.ndarray:
    if len(set(indices)) != len(indices):
        raise DomainError(f"repeated subspace indices {list(indices)}")
    if any(not 0 <= i < dim for i in indices):
        raise DimMismatchError(f"subspace indices {list(indices)} outside range({dim})")
    rows = np.zeros((len(indices), dim), dtype=np.complex128)
    for row, i in enumerate(indices):
        rows[row, i] = 1.0
    return rows


class CommonSubspaceCert(BaseModel):
    """Candidate common subspace with its common unitaries and residuals.

    ``subspace_basis`` holds the orthonormal spanning vectors as rows. Basis
    subsets of the computational basis additionally record
    ``subspace_indices``. ``verified`` holds exactly when both residuals are
    present and at most ``tolerance``.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    dim: int = Field(ge=1, description="Local dimension of A (and B)")
    subspace_basis: np.ndarray = Field(description="d_C x dim matrix of orthonormal rows")
    subspace_indices: tuple[int, ...] | None = Field(
        default=None, description="Computational basis subset, when the subspace is one"
    )
    V: np.ndarray = Field(description="Common unitary on A")
    W: np.ndarray = Field(description="Common unitary on B")
    residual_decomposition: float | None = None
    residual_symmetry: float | None = None
    verified: bool = False
    tolerance: float = VERIFY_TOL

    @field_validator("subspace_basis", "V", "W", mode="before")
    @classmethod
    def _coerce(cls, value: Any) -> np.ndarray:
        return frozen_array(value, ndim=2)

    @model_validator(mode="after")
    def _check(self) -> CommonSubspaceCert:
        basis = self.subspace_basis
        if basis.shape[0] < 1 or basis.shape[1] != self.dim:
            raise DimMismatchError(
                f"subspace basis shape {basis.shape} needs 1..{self.dim} rows of length {self.dim}"
            )
        gram = basis.conj() @ basis.T
        residual = float(np.max(np.abs(gram - np.eye(basis.shape[0]))))
        if residual > ORTHONORMAL_TOL:
            raise DomainError(f"subspace basis is not orthonormal (residual {residual:.3e})")
        _check_unitary("V", self.V, self.dim)
        _check_unitary("W", self.W, self.dim)
        _check_residuals(
            self.verified, (self.residual_decomposition, self.residual_symmetry), self.tolerance
        )
        return self

    @classmethod
    def from_indices(
        cls,
        indices: Iterable[int],
        dim: int,
        *,
        V: np.ndarray | None = None,
        W: np.ndarray | None = None,
    ) -> CommonSubspaceCert:
        """Unverified certificate for a computational-basis subset."""
        ordered = tuple(sorted(int(i) for i in indices))
        return cls(
            dim=dim,
            subspace_basis=_basis_rows(ordered, dim),
            subspace_indices=ordered,
            V=np.eye(dim) if V is None else V,
            W=np.eye(dim) if W is None else W,
        )

    @classmethod
    def full_space(cls, dim: int) -> CommonSubspaceCert:
        return cls.from_indices(range(dim), dim)

    @property
    def d_common(self) -> int:
        return int(self.subspace_basis.shape[0])

    @property
    def is_full(self) -> bool:
        return self.d_common == self.dim

    @property
    def projector(self) -> np.ndarray:
        """Orthogonal projector onto the subspace."""
        result: np.ndarray = self.subspace_basis.T @ self.subspace_basis.conj()
        return result

    def with_residuals(
        self, decomposition: float, symmetry: float, *, tolerance: float = VERIFY_TOL
    ) -> CommonSubspaceCert:
        """Copy carrying fresh residuals and the matching verdict."""
        return CommonSubspaceCert(
            dim=self.dim,
            subspace_basis=self.subspace_basis,
            subspace_indices=self.subspace_indices,
            V=self.V,
            W=self.W,
            residual_decomposition=decomposition,
            residual_symmetry=symmetry,
            verified=decomposition <= tolerance and symmetry <= tolerance,
            tolerance=tolerance,
        )


class SubspaceSplit(BaseModel):
    """Common and uncommon fragments plus the leftover cross-term norm."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    common: PureState
    uncommon: PureState
    cross_norm: float = Field(ge=0)


class StretchedState(BaseModel):
    """Stretched state on ``[A, B, R..., A', B']``.

    The common component keeps the ancillas in ``|zeta_index>``; the uncommon
    component is routed onto the ancillas while A and B sit in
    ``|eta_index>``. ``eta_index`` is None on the full-space path where nothing
    is routed. ``canonical`` is the local unitary that moved the subspace to
    the front of the basis.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    state: PureState
    cert: CommonSubspaceCert | None = None
    labels: tuple[str, str] = ("A", "B")
    ancillas: tuple[str, str] = ("A'", "B'")
    zeta_index: int = 0
    eta_index: int | None = None
    d_common: int = Field(ge=0)
    canonical: np.ndarray


class ThreePartyCert(BaseModel):
    """Basis subset common to three parties under cyclic rotation."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    dim: int = Field(ge=1)
    subspace_indices: tuple[int, ...] = Field(min_length=1)
    V1: np.ndarray
    V2: np.ndarray
    V3: np.ndarray
    residual_decomposition: float | None = None
    residual_symmetry: float | None = None
    verified: bool = False
    tolerance: float = VERIFY_TOL

    @field_validator("V1", "V2", "V3", mode="before")
    @classmethod
    def _coerce(cls, value: Any) -> np.ndarray:
        return frozen_array(value, ndim=2)

    @model_validator(mode="after")
    def _check(self) -> ThreePartyCert:
        _basis_rows(self.subspace_indices, self.dim)
        for name, matrix in (("V1", self.V1), ("V2", self.V2), ("V3", self.V3)):
            _check_unitary(name, matrix, self.dim)
        _check_residuals(
            self.verified, (self.residual_decomposition, self.residual_symmetry), self.tolerance
        )
        return self

    @classmethod
    def from_indices(
        cls, indices: Iterable[int], dim: int, unitaries: Sequence[np.ndarray] | None = None
    ) -> ThreePartyCert:
        ordered = tuple(sorted(int(i) for i in indices))
        v1, v2, v3 = unitaries if unitaries is not None else (np.eye(dim),) * 3
        return cls(dim=dim, subspace_indices=ordered, V1=v1, V2=v2, V3=v3)

    @property
    def d_common(self) -> int:
        return len(self.subspace_indices)

    @property
    def unitaries(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        return (self.V1, self.V2, self.V3)

    @property
    def projector(self) -> np.ndarray:
        return _basis_rows(self.subspace_indices, self.dim).T @ _basis_rows(
            self.subspace_indices, self.dim
        )

    def with_residuals(
        self, decomposition: float, symmetry: float, *, tolerance: float = VERIFY_TOL
    ) -> ThreePartyCert:
        return ThreePartyCert(
            dim=self.dim,
            subspace_indices=self.subspace_indices,
            V1=self.V1,
            V2=self.V2,
            V3=self.V3,
            residual_decomposition=decomposition,
            residual_symmetry=symmetry,
            verified=decomposition <= tolerance and symmetry <= tolerance,
            tolerance=tolerance,
        )
