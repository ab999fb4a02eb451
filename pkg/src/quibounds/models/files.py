"""On-disk JSON schemas for states, certificates and decompositions."""

from __future__ import annotations

from pathlib import Path
from typing import Literal, TypeVar

import numpy as np
from pydantic import BaseModel, Field, ValidationError, model_validator

from quibounds.exceptions import ParseError

ModelT = TypeVar("ModelT", bound=BaseModel)

# A complex number on disk is a two-element [re, im] array.
ComplexPair = tuple[float, float]
ComplexMatrix = list[list[ComplexPair]]


class SystemRecord(BaseModel):
    """One entry of the ``systems`` array."""

    label: str = Field(min_length=1, max_length=16)
    dim: int = Field(ge=1)


class AmplitudeRecord(BaseModel):
    """One non-zero amplitude; omitted indices are zero."""

    index: list[int] = Field(description="Multi-index in systems order")
    re: float
    im: float = 0.0


class StateRecord(BaseModel):
    """State file: ordered systems plus sparse amplitudes."""

    systems: list[SystemRecord] = Field(min_length=1)
    amplitudes: list[AmplitudeRecord] = Field(default_factory=list)


class CertRecord(BaseModel):
    """Common subspace certificate file; V and W default to the identity."""

    subspace_indices: list[int] | None = Field(default=None, description="Basis subset")
    subspace_basis: list[list[ComplexPair]] | None = Field(
        default=None, description="Orthonormal vectors spanning a non-basis subspace"
    )
    dim: int | None = Field(default=None, ge=1, description="Local dimension (else from state)")
    V: ComplexMatrix | None = None
    W: ComplexMatrix | None = None
    residual_decomposition: float | None = None
    residual_symmetry: float | None = None
    verified: bool | None = None

    @model_validator(mode="after")
    def _one_subspace(self) -> CertRecord:
        if (self.subspace_indices is None) == (self.subspace_basis is None):
            raise ValueError("exactly one of subspace_indices or subspace_basis is required")
        return self


class DecompositionRecord(BaseModel):
    """Decomposition file: a named family or explicit rates plus components."""

    family: Literal["zeta", "product_epr"] | None = None
    c: list[float] | None = Field(default=None, min_length=4, max_length=4)
    x: float | None = None
    rates: list[float] | None = Field(default=None, min_length=4, max_length=4)
    phi_l: StateRecord | None = None
    phi_b: StateRecord | None = None
    phi_r: StateRecord | None = None
    phi_c: StateRecord | None = None

    @model_validator(mode="after")
    def _complete(self) -> DecompositionRecord:
        if self.family is None:
            parts = (self.rates, self.phi_l, self.phi_b, self.phi_r, self.phi_c)
            if any(part is None for part in parts):
                raise ValueError("explicit decompositions need rates and all four components")
        elif self.family == "zeta" and (self.c is None) == (self.x is None):
            raise ValueError("zeta decompositions need exactly one of c or x")
        return self


def encode_matrix(matrix: np.ndarray) -> ComplexMatrix:
    return [[(float(z.real), float(z.imag)) for z in row] for row in np.asarray(matrix)]


def decode_matrix(rows: list[list[ComplexPair]]) -> np.ndarray:
    return np.array([[complex(re, im) for re, im in row] for row in rows], dtype=np.complex128)


def read_record(path: str | Path, model: type[ModelT]) -> ModelT:
    """Parse a JSON file into ``model``.

    Raises:
        ParseError: If the file is unreadable or does not match the schema.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"cannot read file: {e.strerror or e}", path=str(path)) from e
    try:
        return model.model_validate_json(text)
    except ValidationError as e:
        first = e.errors()[0]
        where = ".".join(str(part) for part in first["loc"]) or "<root>"
        raise ParseError(f"{where}: {first['msg']}", path=str(path)) from e


def write_record(path: str | Path, record: BaseModel) -> None:
    """Write ``record`` as indented UTF-8 JSON with a trailing newline."""
    text = record.model_dump_json(indent=2, exclude_none=True)
    Path(path).write_text(text + "\n", encoding="utf-8")
