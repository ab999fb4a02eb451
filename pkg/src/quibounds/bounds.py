"""Evaluators for the converse and achievable bounds on uncommon information."""

from __future__ import annotations

import itertools
import logging
import math
from collections.abc import Sequence
from pathlib import Path

import numpy as np
from scipy.special import entr, xlogy

from quibounds._base import CHAIN_SLACK, IDENTITY_TOL, MAX_PARTITION_DIM
from quibounds.exceptions import ConsistencyError, DimMismatchError, EmptyFamilyError
from quibounds.models.bounds import (
    BoundReport,
    DecompositionSpec,
    IsometrySplit,
    UNewBreakdown,
    ZetaBounds,
)
from quibounds.models.certs import CommonSubspaceCert
from quibounds.models.files import DecompositionRecord, read_record, write_record
from quibounds.models.layout import SubsystemLayout
from quibounds.models.states import PureState, ZetaParams
from quibounds.qlinalg import conditional_entropy, entropy, permute
from quibounds.qstate import (
    make_basis_state,
    make_named,
    state_from_record,
    state_to_record,
    zeta_from_x,
)
from quibounds.subspace import stretch

logger = logging.getLogger(__name__)

Labels = tuple[str, str]

_LN2 = math.log(2.0)

_COMPONENT_LABELS = {
    "phi_l": ("A1", "R1"),
    "phi_b": ("A2", "B2"),
    "phi_r": ("R2", "B1"),
    "phi_c": ("A3", "R3", "R4", "B3"),
}

# Internal labels of the two reference registers after an isometry split.
_SPLIT_R1 = "split_R1"
_SPLIT_R2 = "split_R2"


def reference_labels(psi: PureState, labels: Labels = ("A", "B")) -> tuple[str, ...]:
    """Every label other than the two exchanged ones."""
    return psi.layout.complement(labels)


def bound_l1(psi: PureState, labels: Labels = ("A", "B")) -> float:
    """``|S(B) - S(A)|``."""
    a, b = labels
    return abs(entropy(psi, [b]) - entropy(psi, [a]))


def bound_u1(psi: PureState, labels: Labels = ("A", "B")) -> float:
    """``S(AB)``, the merge-and-send rate."""
    psi.layout.require(labels)
    return entropy(psi, labels)


def u_new_breakdown(
    psi: PureState,
    cert: CommonSubspaceCert | None,
    *,
    labels: Labels = ("A", "B"),
    identity_tol: float = IDENTITY_TOL,
) -> UNewBreakdown:
    """``S(R|A)`` on the stretched state and its two merging rates.

    The subspace exchange merges A' to Bob at rate ``S(A'|BB')`` and B' to
    Alice at rate ``S(B'|A)``; their sum must reproduce ``S(R|A)``.

    Raises:
        NotCommonError: If ``cert`` does not verify.
        ConsistencyError: If the two expressions differ by more than ``identity_tol``.
    """
    a, b = labels
    stretched = stretch(psi, cert, labels=labels)
    state = stretched.state
    a2, b2 = stretched.ancillas
    refs = state.layout.complement([a, b, a2, b2])
    u_new = conditional_entropy(state, refs, [a])
    merge_a = conditional_entropy(state, [a2], [b, b2])
    merge_b = conditional_entropy(state, [b2], [a])
    residual = abs(u_new - (merge_a + merge_b))
    if residual > identity_tol:
        raise ConsistencyError(
            f"S(R|A)={u_new:.12g} but S(A'|BB')+S(B'|A)={merge_a + merge_b:.12g}"
        )
    gap = bound_u1(psi, labels) - u_new
    logger.debug("u_new=%.12g (merges %.12g + %.12g), gap to u1 %.3e", u_new, merge_a, merge_b, gap)
    return UNewBreakdown(
        u_new=u_new,
        merge_a=merge_a,
        merge_b=merge_b,
        identity_residual=residual,
        gap=gap,
        d_common=stretched.d_common,
    )


def bound_u_new(
    psi: PureState, cert: CommonSubspaceCert | None, *, labels: Labels = ("A", "B")
) -> float:
    """``u_new = S(R|A)`` on the stretched state.

    ``cert=None`` is the no-common-subspace path and returns ``u1``.

    Raises:
        NotCommonError: If ``cert`` does not verify.
        ConsistencyError: If the merging rates do not add up.
    """
    return u_new_breakdown(psi, cert, labels=labels).u_new


def _split_tensor(psi: PureState, split: IsometrySplit, labels: Labels) -> np.ndarray:
    """``(V psi)`` as an array indexed ``[a, b, r1, r2]``."""
    a, b = labels
    refs = reference_labels(psi, labels)
    d_a, d_b = psi.layout.dim_of(a), psi.layout.dim_of(b)
    d_ref = math.prod(psi.layout.dim_of(r) for r in refs)
    t = permute(psi, [a, b, *refs]).tensor.reshape(d_a, d_b, d_ref)
    if split.pre_rotation is not None:
        if split.pre_rotation.shape != (d_ref, d_ref):
            raise DimMismatchError(
                f"pre-rotation shape {split.pre_rotation.shape} does not act on R (dim {d_ref})"
            )
        t = np.einsum("kl,abl->abk", split.pre_rotation, t)

    if split.factor_labels is not None:
        psi.layout.require(split.factor_labels)
        outside = set(split.factor_labels) - set(refs)
        if outside:
            raise DimMismatchError(f"labels {sorted(outside)} are not reference subsystems")
        first = [r for r in refs if r in split.factor_labels]
        rest = [r for r in refs if r not in split.factor_labels]
        ref_dims = [psi.layout.dim_of(r) for r in refs]
        t = t.reshape(d_a, d_b, *ref_dims)
        axes = [0, 1] + [2 + refs.index(r) for r in first] + [2 + refs.index(r) for r in rest]
        n1 = math.prod(psi.layout.dim_of(r) for r in first)
        n2 = math.prod(psi.layout.dim_of(r) for r in rest)
        result: np.ndarray = np.transpose(t, axes).reshape(d_a, d_b, n1, n2)
        return result

    assert split.partition is not None
    if len(split.partition) != d_ref:
        raise DimMismatchError(
            f"partition covers {len(split.partition)} indices but R has dimension {d_ref}"
        )
    ones = [k for k, p in enumerate(split.partition) if p == 1]
    twos = [k for k, p in enumerate(split.partition) if p == 2]
    iso = np.zeros((len(ones) + 1, len(twos) + 1, d_ref))
    for pos, k in enumerate(ones):
        iso[pos + 1, 0, k] = 1.0
    for pos, k in enumerate(twos):
        iso[0, pos + 1, k] = 1.0
    result = np.einsum("xyk,abk->abxy", iso, t)
    return result


def split_value(psi: PureState, split: IsometrySplit, *, labels: Labels = ("A", "B")) -> float:
    """``S(B R1) - S(A R1)`` after the isometry ``split``."""
    a, b = labels
    t = _split_tensor(psi, split, labels)
    layout = SubsystemLayout.of((a, t.shape[0]), (b, t.shape[1]), (_SPLIT_R1, t.shape[2]), (
        _SPLIT_R2,
        t.shape[3],
    ))
    state = PureState(layout=layout, amplitudes=t.ravel())
    return entropy(state, [b, _SPLIT_R1]) - entropy(state, [a, _SPLIT_R1])


def default_splits(
    psi: PureState, *, labels: Labels = ("A", "B"), max_dim: int = MAX_PARTITION_DIM
) -> list[IsometrySplit]:
    """Every basis partition of the composite reference plus factor splits.

    The two trivial partitions (R1 empty, R1 = R) come first. Beyond
    ``max_dim`` only the trivial partitions are generated. When the reference
    has several subsystems every proper non-empty subset of them is also sent
    to R1 as a factor split.
    """
    refs = reference_labels(psi, labels)
    d_ref = math.prod(psi.layout.dim_of(r) for r in refs)
    trivial = [(2,) * d_ref, (1,) * d_ref]
    if d_ref <= max_dim:
        partitions = trivial + [
            p for p in itertools.product((2, 1), repeat=d_ref) if p not in trivial
        ]
    else:
        logger.warning(
            "reference dimension %d exceeds %d; using trivial splits only", d_ref, max_dim
        )
        partitions = trivial
    splits = [IsometrySplit(partition=p) for p in partitions]
    for size in range(1, len(refs)):
        for subset in itertools.combinations(refs, size):
            splits.append(IsometrySplit(factor_labels=subset))
    return splits


def best_split(
    psi: PureState,
    splits: Sequence[IsometrySplit] | None = None,
    *,
    labels: Labels = ("A", "B"),
) -> tuple[IsometrySplit, float]:
    """Split attaining the largest ``S(BR1) - S(AR1)`` and its value.

    Raises:
        EmptyFamilyError: If ``splits`` is an empty sequence.
    """
    family = default_splits(psi, labels=labels) if splits is None else list(splits)
    if not family:
        raise EmptyFamilyError("bound_l2 needs at least one isometry split")
    values = [split_value(psi, s, labels=labels) for s in family]
    best = int(np.argmax(values))
    return family[best], values[best]


def bound_l2(
    psi: PureState,
    splits: Sequence[IsometrySplit] | None = None,
    *,
    labels: Labels = ("A", "B"),
) -> float:
    """Largest ``S(BR1) - S(AR1)`` over a family of isometries ``R -> R1 R2``.

    This is a lower estimate of the supremum over all isometries. With the
    default family it is never below ``bound_l1``.

    Raises:
        EmptyFamilyError: If ``splits`` is an empty sequence.
    """
    return best_split(psi, splits, labels=labels)[1]


def _require_component_labels(spec: DecompositionSpec) -> None:
    for name, needed in _COMPONENT_LABELS.items():
        getattr(spec, name).layout.require(needed)


def bound_l_new(spec: DecompositionSpec) -> float:
    """``r1 S(A1) + r3 S(B1) + r4 (S(B3 R3) - S(A3 R3))`` for a declared decomposition.

    The bottom component carries no term. The value can be negative for a
    poorly chosen decomposition.

    Raises:
        UnknownLabelError: If a component lacks its required labels.
    """
    _require_component_labels(spec)
    r1, _, r3, r4 = spec.rates
    value = 0.0
    if r1:
        value += r1 * entropy(spec.phi_l, ["A1"])
    if r3:
        value += r3 * entropy(spec.phi_r, ["B1"])
    if r4:
        value += r4 * (entropy(spec.phi_c, ["B3", "R3"]) - entropy(spec.phi_c, ["A3", "R3"]))
    return value


def _shannon(probabilities: Sequence[float]) -> float:
    return float(np.sum(entr(np.asarray(probabilities, dtype=float))) / _LN2)


def _trivial(labels: Sequence[str]) -> PureState:
    layout = SubsystemLayout.of(*((label, 1) for label in labels))
    return make_basis_state(layout, [0] * len(labels))


def make_zeta_decomposition(params: ZetaParams) -> DecompositionSpec:
    """EPR/EPR/EPR/GHZ decomposition of the zeta family.

    Rates are ``(c1^2, c2^2, c0^2, H(c^2))`` with H the Shannon entropy of
    the squared coefficients; the GHZ component sits on ``A3 R3 B3`` with a
    trivial ``R4``.
    """
    p0, p1, p2, _ = params.p
    ghz = make_named("GHZ3", ("A3", "R3", "B3"))
    phi_c = permute(
        PureState(
            layout=ghz.layout.concat(SubsystemLayout.of(("R4", 1))), amplitudes=ghz.amplitudes
        ),
        ["A3", "R3", "R4", "B3"],
    )
    return DecompositionSpec(
        rates=(p1, p2, p0, _shannon(params.p)),
        phi_l=make_named("EPR", ("A1", "R1")),
        phi_b=make_named("EPR", ("A2", "B2")),
        phi_r=make_named("EPR", ("R2", "B1")),
        phi_c=phi_c,
        family="zeta",
    )


def make_product_epr_decomposition() -> DecompositionSpec:
    """``EPR_{A R1} x EPR_{R2 B}`` split into its two pairs (rates 1, 0, 1, 0)."""
    return DecompositionSpec(
        rates=(1.0, 0.0, 1.0, 0.0),
        phi_l=make_named("EPR", ("A1", "R1")),
        phi_b=_trivial(("A2", "B2")),
        phi_r=make_named("EPR", ("R2", "B1")),
        phi_c=_trivial(("A3", "R3", "R4", "B3")),
        family="product_epr",
    )


def spec_from_split(
    psi: PureState, split: IsometrySplit, *, labels: Labels = ("A", "B")
) -> DecompositionSpec:
    """Decomposition in which the referee only splits R by an isometry.

    Applied copy by copy the isometry is reversible, so the result is a valid
    decomposition with rates ``(0, 0, 0, 1)`` whose ``bound_l_new`` equals
    ``split_value(psi, split)``.
    """
    t = _split_tensor(psi, split, labels)
    d_a, d_b, n1, n2 = t.shape
    layout = SubsystemLayout.of(("A3", d_a), ("R3", n1), ("R4", n2), ("B3", d_b))
    phi_c = PureState(layout=layout, amplitudes=np.transpose(t, (0, 2, 3, 1)).ravel())
    return DecompositionSpec(
        rates=(0.0, 0.0, 0.0, 1.0),
        phi_l=_trivial(("A1", "R1")),
        phi_b=_trivial(("A2", "B2")),
        phi_r=_trivial(("R2", "B1")),
        phi_c=phi_c,
        family=f"isometry {split.describe()}",
    )


def _plog(p: float, q: float) -> float:
    """``p log2 q`` with ``0 log 0 = 0``."""
    return float(xlogy(p, q)) / _LN2


def zeta_closed_forms(params: ZetaParams) -> ZetaBounds:
    """Closed-form l1, l_new, u_new and u1 for the zeta family."""
    p0, p1, p2, p3 = params.p
    q = p0 + p1
    return ZetaBounds(
        l1=abs(p0 - p1),
        l_new=q,
        u_new=-_plog(p0, p0 / 2) + _plog(q, q) - _plog(p1, p1 / 2),
        u1=-_plog(p0, p0 / 2) - _plog(p1, p1 / 2) - _plog(p2, p2) - _plog(p3, p3),
    )


def full_report(
    psi: PureState,
    cert: CommonSubspaceCert | None = None,
    spec: DecompositionSpec | None = None,
    splits: Sequence[IsometrySplit] | None = None,
    *,
    labels: Labels = ("A", "B"),
    slack: float = CHAIN_SLACK,
) -> BoundReport:
    """Evaluate every bound the inputs allow and check their ordering.

    ``u_new`` needs ``cert`` and ``l_new`` needs ``spec``; both are omitted
    otherwise. ``l2_found`` uses ``splits`` or the default family.
    """
    provenance: dict[str, str] = {
        "l1": "numeric: |S(B) - S(A)| from reduced spectra",
        "u1": "numeric: S(AB) from reduced spectra",
    }
    l1 = bound_l1(psi, labels)
    u1 = bound_u1(psi, labels)

    family = default_splits(psi, labels=labels) if splits is None else list(splits)
    split, l2 = best_split(psi, family, labels=labels)
    provenance["l2_found"] = (
        f"numeric: best of {len(family)} restricted isometries ({split.describe()}); "
        "a lower estimate of the supremum over all isometries"
    )

    l_new = None
    if spec is not None:
        l_new = bound_l_new(spec)
        provenance["l_new"] = (
            f"numeric: declared decomposition ({spec.family or 'custom'}); "
            "one transformation, not the supremum"
        )

    u_new = None
    if cert is not None:
        breakdown = u_new_breakdown(psi, cert, labels=labels)
        u_new = breakdown.u_new
        provenance["u_new"] = (
            f"numeric: S(R|A) on the stretched state (d_C={breakdown.d_common}); "
            f"merge rates {breakdown.merge_a:.6g} + {breakdown.merge_b:.6g}"
        )

    report = BoundReport(
        l1=l1,
        l2_found=l2,
        l_new=l_new,
        u_new=u_new,
        u1=u1,
        provenance=provenance,
        slack=slack,
    )
    if not report.chain_ok:
        logger.warning("bound ordering violated: %s", "; ".join(report.chain_violations))
    return report


def spec_from_record(
    record: DecompositionRecord, *, source: str | None = None
) -> DecompositionSpec:
    """Build a decomposition from its file record."""
    if record.family == "product_epr":
        return make_product_epr_decomposition()
    if record.family == "zeta":
        if record.c is not None:
            c0, c1, c2, c3 = record.c
            params = ZetaParams(c=(c0, c1, c2, c3))
        else:
            assert record.x is not None
            params = zeta_from_x(record.x)
        return make_zeta_decomposition(params)
    assert record.rates is not None
    components = {}
    for name in _COMPONENT_LABELS:
        part = getattr(record, name)
        assert part is not None
        components[name] = state_from_record(part, source=source)
    r1, r2, r3, r4 = record.rates
    return DecompositionSpec(rates=(r1, r2, r3, r4), **components)


def load_spec(path: str | Path) -> DecompositionSpec:
    """Read a decomposition file.

    Raises:
        ParseError: If the file is malformed.
    """
    return spec_from_record(read_record(path, DecompositionRecord), source=str(path))


def save_spec(spec: DecompositionSpec, path: str | Path) -> None:
    """Write a decomposition file in explicit form."""
    record = DecompositionRecord(
        rates=list(spec.rates),
        phi_l=state_to_record(spec.phi_l),
        phi_b=state_to_record(spec.phi_b),
        phi_r=state_to_record(spec.phi_r),
        phi_c=state_to_record(spec.phi_c),
    )
    write_record(path, record)
