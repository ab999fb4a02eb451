"""State families, final-state operators and state files."""

from __future__ import annotations

import logging
import math
from collections.abc import Iterable, Sequence
from pathlib import Path

import numpy as np
from scipy.stats import unitary_group

from quibounds._base import FILE_NORM_TOL
from quibounds.exceptions import (
    DimMismatchError,
    LabelCollisionError,
    NormalizationError,
    ParseError,
    UnknownStateError,
)
from quibounds.models.enums import NamedState
from quibounds.models.files import (
    AmplitudeRecord,
    StateRecord,
    SystemRecord,
    read_record,
    write_record,
)
from quibounds.models.layout import SubsystemLayout
from quibounds.models.states import PureState, SweepParam, ZetaParams
from quibounds.qlinalg import permute, tensor

logger = logging.getLogger(__name__)

ZETA_LAYOUT = SubsystemLayout.of(("A", 6), ("B", 6), ("R", 6))
XI_LAYOUT = SubsystemLayout.of(("A1", 6), ("A2", 6), ("A3", 6), ("R", 6))
QSR_PARTIES = ("A1", "A2", "A3")

_SQRT_HALF = 1 / math.sqrt(2)


def _family_terms(params: ZetaParams) -> list[tuple[float, tuple[int, ...]]]:
    """Weighted basis kets shared by the zeta and xi families (zeta indices)."""
    c0, c1, c2, c3 = params.c
    return [
        (c0 * _SQRT_HALF, (0, 0, 0)),
        (c0 * _SQRT_HALF, (0, 1, 1)),
        (c1 * _SQRT_HALF, (1, 2, 2)),
        (c1 * _SQRT_HALF, (2, 2, 3)),
        (c2 * _SQRT_HALF, (3, 3, 4)),
        (c2 * _SQRT_HALF, (4, 4, 4)),
        (c3, (5, 5, 5)),
    ]


def _from_terms(
    layout: SubsystemLayout, terms: Iterable[tuple[float, Sequence[int]]]
) -> PureState:
    t = np.zeros(layout.dims, dtype=np.complex128)
    for weight, index in terms:
        t[tuple(index)] += weight
    return PureState(layout=layout, amplitudes=t.ravel())


def make_zeta(params: ZetaParams) -> PureState:
    """Tripartite six-level family on ``[A:6, B:6, R:6]``.

    Example:
        >>> psi = make_zeta(ZetaParams(c=(1.0, 0.0, 0.0, 0.0)))
        >>> round(abs(psi.amplitude(0, 1, 1)) ** 2, 3)
        0.5
    """
    return _from_terms(ZETA_LAYOUT, _family_terms(params))


# Party indices of the xi kets |a1 a2 a3 r>, term by term in zeta order.
_XI_INDICES = [
    (0, 0, 1, 0),
    (0, 1, 0, 1),
    (1, 2, 0, 2),
    (2, 2, 1, 3),
    (3, 3, 3, 4),
    (4, 4, 4, 4),
    (5, 5, 5, 5),
]


def make_xi(params: ZetaParams) -> PureState:
    """Four-party six-level family on ``[A1:6, A2:6, A3:6, R:6]``."""
    weights = [weight for weight, _ in _family_terms(params)]
    return _from_terms(XI_LAYOUT, zip(weights, _XI_INDICES))


def zeta_from_x(x: float | SweepParam) -> ZetaParams:
    """Coefficients along the one-parameter sweep.

    ``c0^2 = (5-2x)/8``, ``c1^2 = (3-x)/8``, ``c2^2 = x/8``, ``c3^2 = x/4``.

    Raises:
        DomainError: If x lies outside [0, 1].
    """
    param = x if isinstance(x, SweepParam) else SweepParam(x=x)
    v = param.x
    return ZetaParams(
        c=(
            math.sqrt((5 - 2 * v) / 8),
            math.sqrt((3 - v) / 8),
            math.sqrt(v / 8),
            math.sqrt(v / 4),
        )
    )


def make_named(name: NamedState | str, labels: Sequence[str] | None = None) -> PureState:
    """Named reference states.

    - ``GHZ3``: ``(|000> + |111>)/sqrt(2)`` on ``[A:2, B:2, R:2]``
    - ``EPR``: ``(|00> + |11>)/sqrt(2)`` on two qubits (default labels A, B)
    - ``ProductEPR``: ``EPR_{A R1} x EPR_{R2 B}`` on ``[A:2, B:2, R1:2, R2:2]``

    Raises:
        UnknownStateError: If the name is not recognized.
    """
    try:
        named = NamedState(name)
    except ValueError:
        raise UnknownStateError(
            f"unknown state {name!r}; expected one of {[n.value for n in NamedState]}"
        ) from None

    if named is NamedState.EPR:
        a, b = labels or ("A", "B")
        layout = SubsystemLayout.of((a, 2), (b, 2))
        return _from_terms(layout, [(_SQRT_HALF, (0, 0)), (_SQRT_HALF, (1, 1))])
    if named is NamedState.GHZ3:
        a, b, r = labels or ("A", "B", "R")
        layout = SubsystemLayout.of((a, 2), (b, 2), (r, 2))
        return _from_terms(layout, [(_SQRT_HALF, (0, 0, 0)), (_SQRT_HALF, (1, 1, 1))])

    a, b, r1, r2 = labels or ("A", "B", "R1", "R2")
    pair = tensor(make_named(NamedState.EPR, (a, r1)), make_named(NamedState.EPR, (r2, b)))
    return permute(pair, [a, b, r1, r2])


def make_basis_state(layout: SubsystemLayout, index: Sequence[int]) -> PureState:
    """Computational basis state ``|index>`` on ``layout``."""
    return _from_terms(layout, [(1.0, index)])


def _check_equal_dims(psi: PureState, labels: Sequence[str]) -> list[int]:
    if len(set(labels)) != len(labels):
        raise LabelCollisionError(f"labels {list(labels)} must be distinct")
    axes = [psi.layout.index(label) for label in labels]
    dims = {psi.layout.dims[i] for i in axes}
    if len(dims) != 1:
        raise DimMismatchError(f"subsystems {list(labels)} have different dimensions")
    return axes


def exchange_final_state(psi: PureState, label_a: str = "A", label_b: str = "B") -> PureState:
    """Swap the contents of two equal-dimension subsystems.

    Raises:
        DimMismatchError: If the two subsystems differ in dimension.
    """
    i, j = _check_equal_dims(psi, (label_a, label_b))
    amps = np.swapaxes(psi.tensor, i, j).ravel()
    return PureState(layout=psi.layout, amplitudes=amps, is_fragment=psi.is_fragment)


def rotate_final_state(xi: PureState, labels: Sequence[str] = QSR_PARTIES) -> PureState:
    """Cyclic rotation ``|a b c> -> |c a b>`` of three equal-dimension parties.

    Party i's content moves to party i+1, with the third wrapping to the first.

    Raises:
        DimMismatchError: If the parties differ in dimension.
    """
    if len(labels) != 3:
        raise DimMismatchError(f"rotation needs exactly three parties, got {list(labels)}")
    p1, p2, p3 = _check_equal_dims(xi, labels)
    perm = list(range(len(xi.layout)))
    perm[p1], perm[p2], perm[p3] = p3, p1, p2
    amps = np.transpose(xi.tensor, perm).ravel()
    return PureState(layout=xi.layout, amplitudes=amps, is_fragment=xi.is_fragment)


def random_state(layout: SubsystemLayout, rng: np.random.Generator) -> PureState:
    """Pure state with complex Gaussian amplitudes, normalized."""
    d = layout.total_dim
    amps = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return PureState(layout=layout, amplitudes=amps / np.linalg.norm(amps))


def random_symmetric_state(
    d: int,
    d_ref: int,
    subset: Iterable[int],
    rng: np.random.Generator,
    *,
    local_unitaries: bool = False,
) -> tuple[PureState, np.ndarray, np.ndarray]:
    """Random state on ``[A:d, B:d, R:d_ref]`` with a basis common subspace.

    Amplitudes on ``subset x subset`` are symmetrized under A<->B and amplitudes
    pairing an index inside ``subset`` with one outside are zeroed. With
    ``local_unitaries`` the state is additionally rotated by random
    ``V^dagger x W^dagger`` so that ``(V, W)`` are the common unitaries.

    Returns:
        The state and the common unitaries ``(V, W)``.
    """
    layout = SubsystemLayout.of(("A", d), ("B", d), ("R", d_ref))
    mask = np.zeros(d, dtype=bool)
    mask[list(subset)] = True
    c = rng.standard_normal((d, d, d_ref)) + 1j * rng.standard_normal((d, d, d_ref))
    mixed = mask[:, None] ^ mask[None, :]
    c[mixed] = 0
    inside = mask[:, None] & mask[None, :]
    sym = (c + np.swapaxes(c, 0, 1)) / 2
    c = np.where(inside[:, :, None], sym, c)
    v = np.eye(d, dtype=np.complex128)
    w = np.eye(d, dtype=np.complex128)
    if local_unitaries:
        v = unitary_group.rvs(d, random_state=rng)
        w = unitary_group.rvs(d, random_state=rng)
        c = np.einsum("ai,bj,ijk->abk", v.conj().T, w.conj().T, c)
    state = PureState(layout=layout, amplitudes=(c / np.linalg.norm(c)).ravel())
    return state, v, w


def state_to_record(psi: PureState) -> StateRecord:
    """Sparse file record of a state; zero amplitudes are omitted."""
    systems = [SystemRecord(label=e.label, dim=e.dim) for e in psi.layout.entries]
    t = psi.tensor
    amplitudes = [
        AmplitudeRecord(
            index=[int(i) for i in idx], re=float(t[idx].real), im=float(t[idx].imag)
        )
        for idx in zip(*np.nonzero(t))
    ]
    return StateRecord(systems=systems, amplitudes=amplitudes)


def state_from_record(
    record: StateRecord, *, norm_tol: float = FILE_NORM_TOL, source: str | None = None
) -> PureState:
    """Build a normalized state from a file record.

    Raises:
        ParseError: If labels repeat or an amplitude index does not fit the systems.
        NormalizationError: If an amplitude is not finite or the norm differs from 1
            by more than ``norm_tol``.
    """
    labels = [s.label for s in record.systems]
    if len(set(labels)) != len(labels):
        raise ParseError(f"duplicate system labels {labels}", path=source)
    layout = SubsystemLayout.of(*((s.label, s.dim) for s in record.systems))
    t = np.zeros(layout.dims, dtype=np.complex128)
    seen: set[tuple[int, ...]] = set()
    for entry in record.amplitudes:
        idx = tuple(entry.index)
        if len(idx) != len(layout.dims) or any(
            not 0 <= i < d for i, d in zip(idx, layout.dims)
        ):
            raise ParseError(
                f"amplitude index {list(idx)} does not match systems {labels}", path=source
            )
        if idx in seen:
            raise ParseError(f"amplitude index {list(idx)} listed twice", path=source)
        seen.add(idx)
        t[idx] = complex(entry.re, entry.im)
    where = f"{source}: " if source else ""
    if not np.all(np.isfinite(t)):
        raise NormalizationError(f"{where}amplitudes must be finite")
    norm = float(np.linalg.norm(t))
    if abs(norm - 1.0) > norm_tol:
        raise NormalizationError(f"{where}state norm {norm:.12g} differs from 1")
    return PureState(layout=layout, amplitudes=t.ravel() / norm)


def load_state(path: str | Path) -> PureState:
    """Read a state file.

    Raises:
        ParseError: If the file is malformed.
        NormalizationError: If the norm residual exceeds ``FILE_NORM_TOL``.
    """
    record = read_record(path, StateRecord)
    psi = state_from_record(record, source=str(path))
    logger.debug("loaded state %s from %s", psi.layout.labels, path)
    return psi


def save_state(psi: PureState, path: str | Path) -> None:
    """Write a state file (fragments cannot be saved)."""
    if psi.is_fragment:
        raise NormalizationError("fragments are not valid state files")
    write_record(path, state_to_record(psi))
