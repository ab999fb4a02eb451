"""Exact single-shot subspace exchange with ebit accounting.

Teleportation is modelled as an index exchange of the two ancilla registers
costed at ``log2`` of their support dimension; no Bell-measurement circuit is
simulated.
"""

from __future__ import annotations

import logging
import math

import numpy as np

from quibounds._base import ANCILLA_TOL, EXCHANGE_TOL, VERIFY_TOL, primed
from quibounds.exceptions import DimMismatchError, DomainError, NotCommonError, ProtocolError
from quibounds.models.certs import CommonSubspaceCert
from quibounds.models.enums import TeleportMechanism
from quibounds.models.ledger import EbitLedger, LedgerEntry, SseResult
from quibounds.models.layout import SubsystemLayout
from quibounds.models.states import PureState
from quibounds.qlinalg import apply_local, state_trace_distance, tensor
from quibounds.qstate import exchange_final_state, make_basis_state
from quibounds.subspace import build_stretch_unitary, canonical_unitary, verify_common

logger = logging.getLogger(__name__)

Labels = tuple[str, str]


def naive_swap_cost(d: int) -> float:
    """Ebits to teleport two d-level systems past each other.

    Raises:
        DomainError: If ``d < 2``.
    """
    if d < 2:
        raise DomainError(f"swap cost needs d >= 2, got {d}")
    return 2 * math.log2(d)


def effective_dimension(d: int, d_common: int) -> int:
    """Support dimension of a stretched ancilla.

    The stretch unitary maps the uncommon levels ``d_C..d-1`` onto the ancilla
    and leaves ``|0>`` for the common part, so ``d - d_C + 1`` levels are used.
    Without a subspace the whole register moves (``d``) and with the full
    space nothing does (``1``).
    """
    if not 0 <= d_common <= d:
        raise DomainError(f"need 0 <= d_C <= d, got d={d}, d_C={d_common}")
    if d_common == 0:
        return d
    if d_common == d:
        return 1
    return d - d_common + 1


def _teleport_entry(step: str, d_eff: int) -> LedgerEntry:
    if d_eff == 1:
        return LedgerEntry(
            step=step, ebits=0.0, mechanism=TeleportMechanism.NONE, integer_ebits=0, cc_bits=0
        )
    whole = math.ceil(math.log2(d_eff))
    return LedgerEntry(
        step=step,
        ebits=math.log2(d_eff),
        mechanism=TeleportMechanism.TELEPORT_QUDIT,
        integer_ebits=whole,
        cc_bits=2 * whole,
    )


def run_exact_sse(
    psi: PureState,
    cert: CommonSubspaceCert | None,
    *,
    labels: Labels = ("A", "B"),
    tol: float = VERIFY_TOL,
) -> SseResult:
    """Exchange A and B of ``psi`` exactly, teleporting only the stretched ancillas.

    Steps: apply ``V x W`` and the canonical permutation on both sides, attach
    ``|0>|0>`` ancillas and stretch, exchange ``A'`` and ``B'``, unstretch,
    discard the ancillas, undo the permutation and finish with ``W^dagger`` on
    A and ``V^dagger`` on B (the unitaries trade places with the contents).
    ``cert=None`` is the plain teleportation of both registers.

    Raises:
        NotCommonError: If ``cert`` does not verify.
        ProtocolError: If the ancillas do not return to ``|0>|0>`` or the final
            state misses the exchanged state.
    """
    a, b = labels
    a2, b2 = primed(a), primed(b)
    d = psi.layout.dim_of(a)
    if psi.layout.dim_of(b) != d:
        raise DimMismatchError(f"subsystems {a} and {b} have different dimensions")

    identity = np.eye(d, dtype=np.complex128)
    v, w, p = identity, identity, identity
    d_common = 0
    if cert is not None:
        checked = verify_common(psi, cert, labels=labels, tol=tol)
        if not checked.verified:
            raise NotCommonError(
                f"certificate does not verify: residuals {checked.residual_decomposition:.3e} "
                f"/ {checked.residual_symmetry:.3e}"
            )
        v, w, p = cert.V, cert.W, canonical_unitary(cert)
        d_common = cert.d_common
    d_eff = effective_dimension(d, d_common)

    state = apply_local(psi, np.kron(p @ v, p @ w), [a, b])
    state = tensor(state, make_basis_state(SubsystemLayout.of((a2, d), (b2, d)), (0, 0)))
    u = build_stretch_unitary(d, d_common).matrix if d_common < d else None
    if u is not None:
        state = apply_local(apply_local(state, u, [a, a2]), u, [b, b2])

    entries = (
        _teleport_entry(f"teleport {a2} to Bob", d_eff),
        _teleport_entry(f"teleport {b2} to Alice", d_eff),
    )
    state = exchange_final_state(state, a2, b2)

    if u is not None:
        state = apply_local(apply_local(state, u, [a, a2]), u, [b, b2])
    t = state.tensor.reshape(-1, d, d)
    kept = t[:, 0, 0]
    leftover = float(np.sqrt(max(0.0, np.linalg.norm(t) ** 2 - np.linalg.norm(kept) ** 2)))
    if leftover > ANCILLA_TOL:
        raise ProtocolError(f"ancillas did not return to |00> (residual {leftover:.3e})")

    final = PureState(layout=psi.layout, amplitudes=kept)
    final = apply_local(final, np.kron(w.conj().T @ p.conj().T, v.conj().T @ p.conj().T), [a, b])
    distance = state_trace_distance(final, exchange_final_state(psi, a, b))
    if distance > EXCHANGE_TOL:
        raise ProtocolError(f"final state misses the exchanged state by {distance:.3e}")

    ledger = EbitLedger(entries=entries)
    logger.info(
        "exact exchange: d=%d d_C=%d d_eff=%d cost %.6g ebits, distance %.3e",
        d,
        d_common,
        d_eff,
        ledger.total,
        distance,
    )
    return SseResult(
        final=final,
        ledger=ledger,
        distance=distance,
        d_common=d_common,
        d_effective=d_eff,
        naive_cost=naive_swap_cost(d) if d >= 2 else 0.0,
    )


def savings(
    psi: PureState, cert: CommonSubspaceCert | None, *, labels: Labels = ("A", "B")
) -> float:
    """Ebits saved against teleporting A and B whole."""
    return run_exact_sse(psi, cert, labels=labels).savings
