"""Common subspace verification, basis search and stretched states."""

from __future__ import annotations

import itertools
import logging
from collections.abc import Sequence
from pathlib import Path

import numpy as np
import scipy.linalg

from quibounds._base import MAX_SEARCH_DIM, VERIFY_TOL, primed
from quibounds._grid import map_ordered
from quibounds.exceptions import (
    DimMismatchError,
    DomainError,
    NotCommonError,
    ParseError,
    TooLargeError,
)
from quibounds.models.certs import CommonSubspaceCert, StretchedState, SubspaceSplit
from quibounds.models.files import (
    CertRecord,
    decode_matrix,
    encode_matrix,
    read_record,
    write_record,
)
from quibounds.models.layout import SubsystemLayout
from quibounds.models.operators import Operator
from quibounds.models.states import PureState
from quibounds.qlinalg import apply_local, project_local, tensor
from quibounds.qstate import exchange_final_state, make_basis_state

logger = logging.getLogger(__name__)

Labels = tuple[str, str]

ZETA_COMMON_INDICES = (3, 4, 5)


def _local_dim(psi: PureState, labels: Sequence[str], dim: int | None = None) -> int:
    dims = {psi.layout.dim_of(label) for label in labels}
    if len(dims) != 1:
        raise DimMismatchError(f"subsystems {list(labels)} have different dimensions")
    d = dims.pop()
    if dim is not None and dim != d:
        raise DimMismatchError(f"certificate dimension {dim} does not match local dimension {d}")
    return d


def decompose(
    psi: PureState, cert: CommonSubspaceCert, *, labels: Labels = ("A", "B")
) -> SubspaceSplit:
    """Split ``(V x W) psi`` into its ``C x C`` and ``C_perp x C_perp`` parts.

    Args:
        psi: State containing both ``labels``.
        cert: Candidate subspace and common unitaries.
        labels: The two exchanged subsystems.

    Returns:
        Common and uncommon fragments plus the norm of whatever lies in the
        mixed ``C x C_perp`` and ``C_perp x C`` blocks.

    Raises:
        DimMismatchError: If the certificate dimension differs from A or B.
    """
    a, b = labels
    d = _local_dim(psi, labels, cert.dim)
    rotated = apply_local(psi, np.kron(cert.V, cert.W), [a, b])
    pi = cert.projector
    perp = np.eye(d) - pi
    common = project_local(rotated, np.kron(pi, pi), [a, b])
    uncommon = project_local(rotated, np.kron(perp, perp), [a, b])
    cross = float(np.linalg.norm(rotated.amplitudes - common.amplitudes - uncommon.amplitudes))
    return SubspaceSplit(common=common, uncommon=uncommon, cross_norm=cross)


def verify_common(
    psi: PureState,
    cert: CommonSubspaceCert,
    *,
    labels: Labels = ("A", "B"),
    tol: float = VERIFY_TOL,
) -> CommonSubspaceCert:
    """Fill in the decomposition and symmetry residuals of ``cert``.

    The symmetry residual is ``||common - SWAP common||``; the certificate is
    verified when both residuals are at most ``tol``.
    """
    split = decompose(psi, cert, labels=labels)
    swapped = exchange_final_state(split.common, *labels)
    symmetry = split.common.distance(swapped)
    checked = cert.with_residuals(split.cross_norm, symmetry, tolerance=tol)
    logger.debug(
        "subspace %s: decomposition residual %.3e, symmetry residual %.3e, verified=%s",
        cert.subspace_indices or f"dim {cert.d_common}",
        split.cross_norm,
        symmetry,
        checked.verified,
    )
    return checked


def search_basis_common(
    psi: PureState,
    *,
    labels: Labels = ("A", "B"),
    max_dim: int = MAX_SEARCH_DIM,
    tol: float = VERIFY_TOL,
    workers: int = 1,
) -> list[CommonSubspaceCert]:
    """Test every non-empty computational-basis subset with identity unitaries.

    Returns:
        Verified certificates, largest subspace first; ties keep lexicographic
        subset order.

    Raises:
        TooLargeError: If the local dimension exceeds ``max_dim``.
    """
    d = _local_dim(psi, labels)
    if d > max_dim:
        raise TooLargeError(f"basis search over dimension {d} exceeds the guard {max_dim}")
    subsets = [
        subset for size in range(d, 0, -1) for subset in itertools.combinations(range(d), size)
    ]

    def check(subset: tuple[int, ...]) -> CommonSubspaceCert:
        candidate = CommonSubspaceCert.from_indices(subset, d)
        return verify_common(psi, candidate, labels=labels, tol=tol)

    found = [cert for cert in map_ordered(check, subsets, workers=workers) if cert.verified]
    logger.info("basis search: %d of %d subsets verified", len(found), len(subsets))
    return found


def union_cert(
    psi: PureState,
    first: CommonSubspaceCert,
    second: CommonSubspaceCert,
    *,
    labels: Labels = ("A", "B"),
    tol: float = VERIFY_TOL,
) -> CommonSubspaceCert:
    """Verify the union of two basis certificates that share their unitaries.

    Whether a union of common subspaces is again common is not settled in
    general; this reports the outcome for one concrete pair.
    """
    if first.subspace_indices is None or second.subspace_indices is None:
        raise DomainError("unions are defined for basis-subset certificates only")
    if not (np.allclose(first.V, second.V) and np.allclose(first.W, second.W)):
        raise DomainError("certificates use different common unitaries")
    indices = set(first.subspace_indices) | set(second.subspace_indices)
    candidate = CommonSubspaceCert.from_indices(indices, first.dim, V=first.V, W=first.W)
    return verify_common(psi, candidate, labels=labels, tol=tol)


def zeta_common_cert(dim: int = 6) -> CommonSubspaceCert:
    """Unverified certificate for the swap-symmetric levels of the zeta family."""
    return CommonSubspaceCert.from_indices(ZETA_COMMON_INDICES, dim)


def build_stretch_unitary(d: int, d_common: int) -> Operator:
    """Unitary on ``X x X'`` that routes the complement of the front subspace.

    With ``C = span{|0>, ..., |d_C - 1>}``:

    - ``|i>|0> -> |i>|0>`` for ``i < d_C`` (common levels stay put),
    - ``|i>|0> -> |d_C>|i>`` for ``i >= d_C`` (uncommon levels move to X'),
    - ``|d_C>|i> -> |i>|0>`` for ``i >= d_C``, closing each pair,

    and the identity on every other basis state, so U is a permutation
    matrix and its own inverse. ``d_C = 0`` moves all of X onto X'.

    Raises:
        DomainError: Unless ``0 <= d_common < d``.
    """
    if d < 1 or not 0 <= d_common < d:
        raise DomainError(f"stretch unitary needs 0 <= d_C < d, got d={d}, d_C={d_common}")
    target = np.arange(d * d)
    for i in range(d_common, d):
        src, dst = i * d, d_common * d + i
        target[src], target[dst] = dst, src
    matrix = np.zeros((d * d, d * d))
    matrix[target, np.arange(d * d)] = 1.0
    return Operator(layout=SubsystemLayout.of(("X", d), ("X'", d)), matrix=matrix)


def canonical_unitary(cert: CommonSubspaceCert, order: Sequence[int] | None = None) -> np.ndarray:
    """Local unitary P with ``P |v_k> = |k>`` for the subspace vectors ``v_k``.

    For basis certificates P is a permutation: the subspace indices come first
    (in ``order`` if given, else ascending) followed by the remaining indices.
    For general subspaces the remaining rows are an orthonormal completion.
    """
    d = cert.dim
    if cert.subspace_indices is not None:
        front = list(order) if order is not None else list(cert.subspace_indices)
        if sorted(front) != sorted(cert.subspace_indices):
            raise DomainError(f"order {front} is not a permutation of {cert.subspace_indices}")
        perm = front + [i for i in range(d) if i not in front]
        p = np.zeros((d, d), dtype=np.complex128)
        p[np.arange(d), perm] = 1.0
        return p
    rows = cert.subspace_basis
    if order is not None:
        if sorted(order) != list(range(cert.d_common)):
            raise DomainError(f"order {list(order)} is not a permutation of the basis rows")
        rows = rows[list(order)]
    complement = scipy.linalg.null_space(rows.conj())
    result: np.ndarray = np.vstack([rows.conj(), complement.conj().T])
    return result


def stretch(
    psi: PureState,
    cert: CommonSubspaceCert | None,
    *,
    labels: Labels = ("A", "B"),
    ancillas: Labels | None = None,
    order: Sequence[int] | None = None,
    tol: float = VERIFY_TOL,
) -> StretchedState:
    """Build the stretched state on ``psi``'s layout followed by ``A', B'``.

    Steps: apply ``V x W``; move the subspace to the front of both bases;
    append ``|0>_{A'} |0>_{B'}``; apply the stretch unitary on ``AA'`` and
    ``BB'``. Two degenerate paths are supported: ``cert=None`` (no common
    subspace, d_C = 0) moves all of A and B onto the ancillas, and a
    full-space certificate (d_C = d) leaves ``psi x |0>|0>``.

    Raises:
        NotCommonError: If ``cert`` does not verify on ``psi``.
    """
    a, b = labels
    a2, b2 = ancillas or (primed(a), primed(b))
    d = _local_dim(psi, labels, None if cert is None else cert.dim)

    checked: CommonSubspaceCert | None = None
    rotated = psi
    canonical = np.eye(d, dtype=np.complex128)
    d_common = 0
    if cert is not None:
        checked = verify_common(psi, cert, labels=labels, tol=tol)
        if not checked.verified:
            raise NotCommonError(
                f"certificate does not verify: decomposition residual "
                f"{checked.residual_decomposition:.3e}, symmetry residual "
                f"{checked.residual_symmetry:.3e}"
            )
        rotated = apply_local(psi, np.kron(cert.V, cert.W), [a, b])
        canonical = canonical_unitary(cert, order)
        d_common = cert.d_common

    front = apply_local(rotated, np.kron(canonical, canonical), [a, b])
    ancilla = make_basis_state(SubsystemLayout.of((a2, d), (b2, d)), (0, 0))
    state = tensor(front, ancilla)
    eta: int | None = None
    if d_common < d:
        u = build_stretch_unitary(d, d_common).matrix
        state = apply_local(apply_local(state, u, [a, a2]), u, [b, b2])
        eta = d_common
    else:
        logger.debug("full-space common subspace: stretched state is psi x |0>|0>")

    return StretchedState(
        state=state,
        cert=checked,
        labels=(a, b),
        ancillas=(a2, b2),
        zeta_index=0,
        eta_index=eta,
        d_common=d_common,
        canonical=canonical,
    )


def load_cert(path: str | Path, *, dim: int | None = None) -> CommonSubspaceCert:
    """Read a certificate file; residuals in the file are not trusted.

    Args:
        path: JSON certificate file.
        dim: Local dimension, used when the file does not state one.

    Raises:
        ParseError: If the file is malformed or the dimension is unknown.
    """
    record = read_record(path, CertRecord)
    v = None if record.V is None else decode_matrix(record.V)
    w = None if record.W is None else decode_matrix(record.W)
    if record.subspace_basis is not None:
        basis = decode_matrix(record.subspace_basis)
        d = record.dim or basis.shape[1]
        return CommonSubspaceCert(
            dim=d,
            subspace_basis=basis,
            V=np.eye(d) if v is None else v,
            W=np.eye(d) if w is None else w,
        )
    d_opt = record.dim or dim
    if d_opt is None and v is not None:
        d_opt = v.shape[0]
    if d_opt is None:
        raise ParseError("certificate does not state its dimension", path=str(path))
    assert record.subspace_indices is not None
    return CommonSubspaceCert.from_indices(record.subspace_indices, d_opt, V=v, W=w)


def save_cert(cert: CommonSubspaceCert, path: str | Path) -> None:
    """Write a certificate file; identity unitaries are omitted."""
    identity = np.eye(cert.dim)
    record = CertRecord(
        subspace_indices=list(cert.subspace_indices) if cert.subspace_indices else None,
        subspace_basis=None
        if cert.subspace_indices
        else [[(float(z.real), float(z.imag)) for z in row] for row in cert.subspace_basis],
        dim=cert.dim,
        V=None if np.allclose(cert.V, identity) else encode_matrix(cert.V),
        W=None if np.allclose(cert.W, identity) else encode_matrix(cert.W),
        residual_decomposition=cert.residual_decomposition,
        residual_symmetry=cert.residual_symmetry,
        verified=cert.verified,
    )
    write_record(path, record)
