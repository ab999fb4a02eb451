"""Subsystem layout models."""

from __future__ import annotations

import math
from collections.abc import Iterable

from pydantic import BaseModel, ConfigDict, Field, model_validator

from quibounds.exceptions import DimMismatchError, LabelCollisionError, UnknownLabelError


class Subsystem(BaseModel):
    """One labeled tensor factor."""

    model_config = ConfigDict(frozen=True)

    label: str = Field(min_length=1, max_length=16, description="Subsystem label, e.g. 'A'")
    dim: int = Field(description="Local Hilbert space dimension")

    @model_validator(mode="after")
    def _check_dim(self) -> Subsystem:
        if self.dim < 1:
            raise DimMismatchError(f"subsystem {self.label!r} has dimension {self.dim} < 1")
        return self


class SubsystemLayout(BaseModel):
    """Ordered list of subsystems defining the tensor index order.

    Amplitudes and matrices are stored row-major over the layout order: the
    multi-index ``(i1, ..., ik)`` maps to ``i1*d2*...*dk + ... + ik``.

    Example:
        >>> layout = SubsystemLayout.of(("A", 2), ("B", 3))
        >>> layout.total_dim
        6
    """

    model_config = ConfigDict(frozen=True)

    entries: tuple[Subsystem, ...] = Field(description="Subsystems in tensor order")

    @model_validator(mode="after")
    def _check_labels(self) -> SubsystemLayout:
        seen: set[str] = set()
        for entry in self.entries:
            if entry.label in seen:
                raise LabelCollisionError(f"duplicate subsystem label {entry.label!r}")
            seen.add(entry.label)
        return self

    @classmethod
    def of(cls, *pairs: tuple[str, int]) -> SubsystemLayout:
        """Build a layout from ``(label, dim)`` pairs."""
        return cls(entries=tuple(Subsystem(label=label, dim=dim) for label, dim in pairs))

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(e.label for e in self.entries)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(e.dim for e in self.entries)

    @property
    def total_dim(self) -> int:
        return math.prod(self.dims)

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, label: object) -> bool:
        return label in self.labels

    def index(self, label: str) -> int:
        """Position of ``label`` in the layout."""
        try:
            return self.labels.index(label)
        except ValueError:
            raise UnknownLabelError(
                f"unknown subsystem label {label!r}; layout has {list(self.labels)}"
            ) from None

    def dim_of(self, label: str) -> int:
        return self.entries[self.index(label)].dim

    def require(self, labels: Iterable[str]) -> None:
        """Raise UnknownLabelError unless every label is present."""
        for label in labels:
            self.index(label)

    def ordered(self, labels: Iterable[str]) -> tuple[str, ...]:
        """Return ``labels`` sorted into layout order."""
        wanted = set(labels)
        self.require(wanted)
        return tuple(label for label in self.labels if label in wanted)

    def select(self, labels: Iterable[str]) -> SubsystemLayout:
        """Sub-layout holding ``labels`` in original layout order."""
        keep = set(self.ordered(labels))
        return SubsystemLayout(entries=tuple(e for e in self.entries if e.label in keep))

    def reorder(self, labels: Iterable[str]) -> SubsystemLayout:
        """Layout with the same entries in the order given."""
        order = list(labels)
        if sorted(order) != sorted(self.labels):
            raise UnknownLabelError(f"{order} is not a permutation of {list(self.labels)}")
        return SubsystemLayout(entries=tuple(self.entries[self.index(label)] for label in order))

    def concat(self, other: SubsystemLayout) -> SubsystemLayout:
        """Concatenate two layouts; labels must be disjoint."""
        clash = set(self.labels) & set(other.labels)
        if clash:
            raise LabelCollisionError(f"labels {sorted(clash)} appear in both layouts")
        return SubsystemLayout(entries=self.entries + other.entries)

    def relabel(self, mapping: dict[str, str]) -> SubsystemLayout:
        """Rename labels; unmapped labels are kept."""
        self.require(mapping)
        return SubsystemLayout(
            entries=tuple(
                Subsystem(label=mapping.get(e.label, e.label), dim=e.dim) for e in self.entries
            )
        )

    def complement(self, labels: Iterable[str]) -> tuple[str, ...]:
        """Labels not in ``labels``, in layout order."""
        drop = set(labels)
        self.require(drop)
        return tuple(label for label in self.labels if label not in drop)
