"""Custom exceptions for quibounds."""

from __future__ import annotations


class QuiboundsError(Exception):
    """Base exception for all quibounds errors.

    ``exit_code`` is the process exit status the CLI uses for this error.
    """

    exit_code = 1

    def __init__(self, message: str) -> None:
        self.message = message
        super().__init__(self.message)

    def __str__(self) -> str:
        return self.message


class InputError(QuiboundsError):
    """Invalid input: bad labels, dimensions, parameters or files."""

    exit_code = 1


class LabelCollisionError(InputError):
    """Duplicate or overlapping subsystem labels."""

    pass


class UnknownLabelError(InputError):
    """A label is not part of the layout."""

    pass


class EmptyKeepSetError(InputError):
    """Partial trace asked to keep no subsystem."""

    pass


class EmptyCutError(InputError):
    """Bipartite cut is empty or covers every subsystem."""

    pass


class LayoutMismatchError(InputError):
    """Two operands do not share a layout."""

    pass


class DimMismatchError(InputError):
    """Subsystem dimensions do not agree."""

    pass


class NotHermitianError(InputError):
    """Operator Hermiticity residual exceeds tolerance."""

    pass


class NotPositiveError(InputError):
    """Operator has an eigenvalue below the positivity tolerance."""

    pass


class NormalizationError(InputError):
    """State or parameters are not normalized within tolerance."""

    pass


class DomainError(InputError):
    """Argument outside its admissible range."""

    pass


class UnknownStateError(InputError):
    """Unrecognized named state."""

    pass


class ParseError(InputError):
    """Malformed state, certificate or decomposition file."""

    def __init__(self, message: str, *, path: str | None = None) -> None:
        self.path = path
        super().__init__(message)

    def __str__(self) -> str:
        if self.path:
            return f"{self.path}: {self.message}"
        return self.message


class TooLargeError(InputError):
    """Combinatorial search exceeds its dimension guard."""

    pass


class EmptyFamilyError(InputError):
    """An isometry family with no members was supplied."""

    pass


class VerificationError(QuiboundsError):
    """A certificate or identity failed numerical verification."""

    exit_code = 2


class NotCommonError(VerificationError):
    """Certificate does not describe a common subspace of the state."""

    pass


class ConsistencyError(VerificationError):
    """Two formulas for the same rate disagree beyond tolerance."""

    pass


class ProtocolError(QuiboundsError):
    """Exact exchange protocol left the ancillas entangled."""

    exit_code = 3
