"""Three-party state rotation: common subspaces, stretched states and rates.

Starter ``i`` cycles through the parties as ``i, i+1, i+2`` with indices taken
modulo three and an offset of one, so starter 3 visits ``A3, A1, A2``.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from functools import reduce

import numpy as np
from scipy.special import xlogy

from quibounds._base import VERIFY_TOL, primed
from quibounds.exceptions import DimMismatchError, DomainError, NotCommonError
from quibounds.models.certs import CommonSubspaceCert, ThreePartyCert
from quibounds.models.enums import Provenance
from quibounds.models.layout import SubsystemLayout
from quibounds.models.qsr import QsrRateReport
from quibounds.models.states import PureState, ZetaParams
from quibounds.qlinalg import apply_local, conditional_entropy, entropy, project_local, tensor
from quibounds.qstate import (
    QSR_PARTIES,
    _check_equal_dims,
    make_basis_state,
    make_xi,
    rotate_final_state,
)
from quibounds.subspace import build_stretch_unitary, canonical_unitary

logger = logging.getLogger(__name__)

Parties = tuple[str, str, str]

XI_COMMON_INDICES = (3, 4, 5)

_LN2 = math.log(2.0)


def xi_common_cert(dim: int = 6) -> ThreePartyCert:
    """Unverified certificate for the rotation-symmetric levels of the xi family."""
    return ThreePartyCert.from_indices(XI_COMMON_INDICES, dim)


def _party_dim(xi: PureState, parties: Sequence[str], dim: int | None = None) -> int:
    axes = _check_equal_dims(xi, parties)
    d = xi.layout.dims[axes[0]]
    if dim is not None and dim != d:
        raise DimMismatchError(f"certificate dimension {dim} does not match party dimension {d}")
    return d


def _kron3(matrices: Sequence[np.ndarray]) -> np.ndarray:
    result: np.ndarray = reduce(np.kron, matrices)
    return result


def verify_three_common(
    xi: PureState,
    cert: ThreePartyCert,
    *,
    parties: Parties = QSR_PARTIES,
    tol: float = VERIFY_TOL,
) -> ThreePartyCert:
    """Fill in the residuals of a three-party certificate.

    The decomposition residual is the norm left outside ``C x C x C`` and
    ``C_perp x C_perp x C_perp`` after the common unitaries; the symmetry
    residual is ``||common - rotate(common)||``.

    Raises:
        DimMismatchError: If the parties differ in dimension from each other or the cert.
    """
    d = _party_dim(xi, parties, cert.dim)
    rotated = apply_local(xi, _kron3(cert.unitaries), parties)
    pi = cert.projector
    perp = np.eye(d) - pi
    common = project_local(rotated, _kron3((pi, pi, pi)), parties)
    uncommon = project_local(rotated, _kron3((perp, perp, perp)), parties)
    cross = float(np.linalg.norm(rotated.amplitudes - common.amplitudes - uncommon.amplitudes))
    symmetry = common.distance(rotate_final_state(common, parties))
    checked = cert.with_residuals(cross, symmetry, tolerance=tol)
    logger.debug(
        "three-party subspace %s: residuals %.3e / %.3e, verified=%s",
        cert.subspace_indices,
        cross,
        symmetry,
        checked.verified,
    )
    return checked


def stretch_three(
    xi: PureState,
    cert: ThreePartyCert | None,
    *,
    parties: Parties = QSR_PARTIES,
    tol: float = VERIFY_TOL,
) -> PureState:
    """Three-party stretched state on ``xi``'s layout followed by the primed parties.

    Each party gets its common unitary, the canonical permutation that puts
    the subspace first, a fresh ``|0>`` ancilla and the stretch unitary on
    ``(A_i, A_i')``. ``cert=None`` routes everything onto the ancillas and a
    full-space certificate leaves ``xi x |000>``.

    Raises:
        NotCommonError: If ``cert`` does not verify.
    """
    d = _party_dim(xi, parties, None if cert is None else cert.dim)
    state = xi
    d_common = 0
    if cert is not None:
        checked = verify_three_common(xi, cert, parties=parties, tol=tol)
        if not checked.verified:
            raise NotCommonError(
                f"three-party certificate does not verify: residuals "
                f"{checked.residual_decomposition:.3e} / {checked.residual_symmetry:.3e}"
            )
        p = canonical_unitary(CommonSubspaceCert.from_indices(cert.subspace_indices, d))
        local = [p @ v for v in cert.unitaries]
        state = apply_local(state, _kron3(local), parties)
        d_common = cert.d_common

    primes = [primed(party) for party in parties]
    ancilla = make_basis_state(SubsystemLayout.of(*((a, d) for a in primes)), (0, 0, 0))
    state = tensor(state, ancilla)
    if d_common < d:
        u = build_stretch_unitary(d, d_common).matrix
        for party, anc in zip(parties, primes):
            state = apply_local(state, u, [party, anc])
    else:
        logger.debug("full-space three-party subspace: stretched state is xi x |000>")
    return state


def _cycle(starter: int, parties: Sequence[str]) -> tuple[str, str, str]:
    if starter not in (1, 2, 3):
        raise DomainError(f"starter must be 1, 2 or 3, got {starter}")
    i, j, k = (parties[(starter - 1 + step) % 3] for step in range(3))
    return i, j, k


def rate_u_qsr(xi: PureState, starter: int, *, parties: Parties = QSR_PARTIES) -> float:
    """``S(A_i|A_{i+1}) + S(A_{i+1}|A_{i+2}) + S(A_{i+2})`` on ``xi``.

    Raises:
        DomainError: If ``starter`` is not 1, 2 or 3.
    """
    a, b, c = _cycle(starter, parties)
    return (
        conditional_entropy(xi, [a], [b])
        + conditional_entropy(xi, [b], [c])
        + entropy(xi, [c])
    )


def rate_v_stretched(
    stretched: PureState, starter: int, *, parties: Parties = QSR_PARTIES
) -> float:
    """``v_i`` evaluated on an already stretched three-party state."""
    a, b, c = _cycle(starter, parties)
    a2, b2, c2 = primed(a), primed(b), primed(c)
    return (
        conditional_entropy(stretched, [a2], [b, b2])
        + conditional_entropy(stretched, [b2], [c, c2])
        + conditional_entropy(stretched, [c2], [a])
    )


def rate_v_qsr(
    xi: PureState,
    cert: ThreePartyCert | None,
    starter: int,
    *,
    parties: Parties = QSR_PARTIES,
) -> float:
    """``S(A'_i|A_{i+1}A'_{i+1}) + S(A'_{i+1}|A_{i+2}A'_{i+2}) + S(A'_{i+2}|A_i)``.

    Evaluated on the three-party stretched state; the last term conditions on
    the unprimed starter party only.

    Raises:
        DomainError: If ``starter`` is not 1, 2 or 3.
        NotCommonError: If ``cert`` does not verify.
    """
    _cycle(starter, parties)
    return rate_v_stretched(stretch_three(xi, cert, parties=parties), starter, parties=parties)


def qsr_report(
    xi: PureState, cert: ThreePartyCert | None, *, parties: Parties = QSR_PARTIES
) -> QsrRateReport:
    """All six rates of ``xi``, stretching once for the three ``v`` values."""
    stretched = stretch_three(xi, cert, parties=parties)
    u1, u2, u3 = (rate_u_qsr(xi, i, parties=parties) for i in (1, 2, 3))
    v1, v2, v3 = (rate_v_stretched(stretched, i, parties=parties) for i in (1, 2, 3))
    return QsrRateReport(u=(u1, u2, u3), v=(v1, v2, v3), provenance=Provenance.NUMERIC)


def qsr_numeric(params: ZetaParams) -> QsrRateReport:
    """Numeric rates of the xi family with its rotation-symmetric subspace."""
    return qsr_report(make_xi(params), xi_common_cert())


def _plog(p: float, q: float) -> float:
    return float(xlogy(p, q)) / _LN2


def qsr_closed_forms(params: ZetaParams) -> QsrRateReport:
    """Closed-form u and v rates of the xi family; ``0 log 0 = 0``."""
    p0, p1, p2, p3 = params.p
    q = p0 + p1
    tail_u = -_plog(p2, p2 / 2) - _plog(p3, p3)
    u1 = -_plog(p0, p0 / 2) - _plog(p1, p1) + 2 * p1 + tail_u
    u2 = -2 * _plog(p0, p0 / 2) + _plog(q, q / 2) - 2 * _plog(p1, p1 / 2) + tail_u
    u3 = -_plog(p0, p0) + 2 * p0 - _plog(p1, p1 / 2) + tail_u
    v1 = -_plog(p0, p0 / 2) + _plog(q, q) - _plog(p1, p1) + 2 * p1
    v2 = -2 * _plog(p0, p0 / 2) + 2 * _plog(q, q) - q - 2 * _plog(p1, p1 / 2)
    v3 = -_plog(p0, p0) + 2 * p0 + _plog(q, q) - _plog(p1, p1 / 2)
    return QsrRateReport(u=(u1, u2, u3), v=(v1, v2, v3), provenance=Provenance.CLOSED_FORM)
