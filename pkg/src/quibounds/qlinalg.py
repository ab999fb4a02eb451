"""Dense linear algebra kernel: tensor products, partial traces and entropies.

All logarithms are base two, so entropies are in bits. Tensor indices are
row-major over the layout order (see :class:`SubsystemLayout`).
"""

from __future__ import annotations

import logging
import math
from collections.abc import Iterable, Sequence
from typing import TypeVar, overload

import numpy as np
import scipy.linalg
from scipy.special import entr

from quibounds._base import EIG_CUTOFF, HERMITIAN_TOL, POSITIVITY_TOL, SCHMIDT_CUTOFF
from quibounds.exceptions import (
    DimMismatchError,
    EmptyCutError,
    EmptyKeepSetError,
    LabelCollisionError,
    LayoutMismatchError,
    NotHermitianError,
    NotPositiveError,
)
from quibounds.models.layout import SubsystemLayout
from quibounds.models.operators import DensityOperator, Operator, hermiticity_residual
from quibounds.models.states import PureState, SchmidtDecomposition

logger = logging.getLogger(__name__)

OperatorT = TypeVar("OperatorT", bound=Operator)

_LN2 = math.log(2.0)


@overload
def tensor(a: PureState, b: PureState) -> PureState: ...


@overload
def tensor(a: OperatorT, b: OperatorT) -> OperatorT: ...


def tensor(a: PureState | Operator, b: PureState | Operator) -> PureState | Operator:
    """Kronecker product in layout order.

    Args:
        a: Left factor.
        b: Right factor, same kind as ``a``.

    Returns:
        A state (fragment if either factor is one), density operator (if both
        factors are), or operator on the concatenated layout.

    Raises:
        LabelCollisionError: If the label sets overlap.
    """
    if isinstance(a, PureState) and isinstance(b, PureState):
        layout = a.layout.concat(b.layout)
        return PureState(
            layout=layout,
            amplitudes=np.kron(a.amplitudes, b.amplitudes),
            is_fragment=a.is_fragment or b.is_fragment,
        )
    if isinstance(a, Operator) and isinstance(b, Operator):
        layout = a.layout.concat(b.layout)
        matrix = np.kron(a.matrix, b.matrix)
        if isinstance(a, DensityOperator) and isinstance(b, DensityOperator):
            return DensityOperator(layout=layout, matrix=matrix)
        return Operator(layout=layout, matrix=matrix)
    raise TypeError(f"cannot tensor {type(a).__name__} with {type(b).__name__}")


def density(psi: PureState) -> DensityOperator:
    """``|psi><psi|``."""
    matrix = np.outer(psi.amplitudes, psi.amplitudes.conj())
    return DensityOperator(layout=psi.layout, matrix=matrix)


def permute(psi: PureState, order: Sequence[str]) -> PureState:
    """Reorder subsystems; amplitudes follow their labels."""
    layout = psi.layout.reorder(order)
    axes = [psi.layout.index(label) for label in order]
    amps = np.transpose(psi.tensor, axes).ravel()
    return PureState(layout=layout, amplitudes=amps, is_fragment=psi.is_fragment)


def apply_local(psi: PureState, matrix: np.ndarray, labels: Sequence[str]) -> PureState:
    """Apply ``matrix`` to the subsystems ``labels`` (in that order).

    The result is a fragment whenever the input is, so projectors can be
    applied to normalized states through :func:`project_local`.
    """
    amps = _apply(psi, matrix, labels)
    return PureState(layout=psi.layout, amplitudes=amps, is_fragment=psi.is_fragment)


def project_local(psi: PureState, matrix: np.ndarray, labels: Sequence[str]) -> PureState:
    """Apply a contraction (projector, partial isometry) and return a fragment."""
    return PureState.fragment(psi.layout, _apply(psi, matrix, labels))


def _apply(psi: PureState, matrix: np.ndarray, labels: Sequence[str]) -> np.ndarray:
    layout = psi.layout
    if len(set(labels)) != len(labels):
        raise LabelCollisionError(f"repeated labels in {list(labels)}")
    axes = [layout.index(label) for label in labels]
    local_dim = math.prod(layout.dims[i] for i in axes)
    op = np.asarray(matrix, dtype=np.complex128)
    if op.shape != (local_dim, local_dim):
        raise DimMismatchError(
            f"operator shape {op.shape} does not act on {list(labels)} (dim {local_dim})"
        )
    rest = [i for i in range(len(layout)) if i not in axes]
    t = np.transpose(psi.tensor, axes + rest).reshape(local_dim, -1)
    t = (op @ t).reshape([layout.dims[i] for i in axes + rest])
    result: np.ndarray = np.transpose(t, np.argsort(axes + rest)).ravel()
    return result


def _keep_labels(layout: SubsystemLayout, keep: Iterable[str]) -> tuple[str, ...]:
    keep = tuple(keep)
    if not keep:
        raise EmptyKeepSetError("partial trace must keep at least one subsystem")
    return layout.ordered(keep)


def partial_trace(rho: DensityOperator, keep: Iterable[str]) -> DensityOperator:
    """Trace out every subsystem not in ``keep``.

    Args:
        rho: Density operator.
        keep: Labels to keep; the result lists them in original layout order.

    Raises:
        EmptyKeepSetError: If ``keep`` is empty.
        UnknownLabelError: If a label is not in the layout.

    Example:
        >>> from quibounds.qstate import make_named
        >>> red = partial_trace(density(make_named("EPR")), ["A"])
        >>> red.matrix.real.round(3).tolist()
        [[0.5, 0.0], [0.0, 0.5]]
    """
    layout = rho.layout
    kept = _keep_labels(layout, keep)
    keep_idx = [layout.index(label) for label in kept]
    drop_idx = [i for i in range(len(layout)) if i not in keep_idx]
    n = len(layout)
    dk = math.prod(layout.dims[i] for i in keep_idx)
    dd = math.prod(layout.dims[i] for i in drop_idx)
    t = rho.matrix.reshape(layout.dims + layout.dims)
    perm = keep_idx + drop_idx + [n + i for i in keep_idx] + [n + i for i in drop_idx]
    t = np.transpose(t, perm).reshape(dk, dd, dk, dd)
    reduced = np.einsum("ijkj->ik", t)
    return DensityOperator(layout=layout.select(kept), matrix=reduced)


def reduced_density(psi: PureState, keep: Iterable[str]) -> DensityOperator:
    """Reduced state of a pure state without forming ``|psi><psi|``."""
    layout = psi.layout
    kept = _keep_labels(layout, keep)
    matrix = _bipartite_matrix(psi, kept)
    return DensityOperator(layout=layout.select(kept), matrix=matrix @ matrix.conj().T)


def _bipartite_matrix(psi: PureState, cut: Sequence[str]) -> np.ndarray:
    layout = psi.layout
    cut_idx = [layout.index(label) for label in cut]
    rest_idx = [i for i in range(len(layout)) if i not in cut_idx]
    dk = math.prod(layout.dims[i] for i in cut_idx)
    result: np.ndarray = np.transpose(psi.tensor, cut_idx + rest_idx).reshape(dk, -1)
    return result


def _entropy_of_spectrum(eigenvalues: np.ndarray) -> float:
    kept = eigenvalues[eigenvalues > EIG_CUTOFF]
    value = float(np.sum(entr(kept)) / _LN2)
    return max(value, 0.0)


def spectrum(rho: DensityOperator) -> np.ndarray:
    """Ascending eigenvalues of the symmetrized density operator.

    Raises:
        NotHermitianError: If the Hermiticity residual exceeds tolerance.
        NotPositiveError: If an eigenvalue lies below ``-POSITIVITY_TOL``.
    """
    residual = hermiticity_residual(rho.matrix)
    if residual > HERMITIAN_TOL:
        raise NotHermitianError(f"Hermiticity residual {residual:.3e} exceeds {HERMITIAN_TOL}")
    eigenvalues: np.ndarray = scipy.linalg.eigh(rho.hermitian_part, eigvals_only=True)
    if eigenvalues.size and eigenvalues[0] < -POSITIVITY_TOL:
        raise NotPositiveError(f"eigenvalue {eigenvalues[0]:.3e} below {-POSITIVITY_TOL}")
    return eigenvalues


def von_neumann_entropy(rho: DensityOperator) -> float:
    """``S(rho) = -sum(l log2 l)`` over eigenvalues above the cutoff, in bits."""
    return _entropy_of_spectrum(spectrum(rho))


def entropy(state: PureState | DensityOperator, labels: Iterable[str]) -> float:
    """Entropy of the marginal on ``labels``; the empty set has entropy 0.

    For pure states the marginal spectrum comes from the singular values of the
    bipartite amplitude matrix, so no density matrix is formed.
    """
    labels = tuple(labels)
    if not labels:
        return 0.0
    kept = state.layout.ordered(labels)
    if isinstance(state, DensityOperator):
        return von_neumann_entropy(partial_trace(state, kept))
    if len(kept) == len(state.layout) and not state.is_fragment:
        return 0.0
    singular = scipy.linalg.svdvals(_bipartite_matrix(state, kept))
    return _entropy_of_spectrum(singular**2)


def conditional_entropy(
    state: PureState | DensityOperator,
    target: Iterable[str],
    condition: Iterable[str],
) -> float:
    """``S(target | condition) = S(target + condition) - S(condition)``.

    Raises:
        LabelCollisionError: If target and condition overlap.
        UnknownLabelError: If a label is not in the layout.
    """
    target = tuple(target)
    condition = tuple(condition)
    overlap = set(target) & set(condition)
    if overlap:
        raise LabelCollisionError(f"target and condition share labels {sorted(overlap)}")
    return entropy(state, target + condition) - entropy(state, condition)


def mutual_information(
    state: PureState | DensityOperator, a: Iterable[str], b: Iterable[str]
) -> float:
    """``I(a; b) = S(a) + S(b) - S(ab)``."""
    a = tuple(a)
    b = tuple(b)
    overlap = set(a) & set(b)
    if overlap:
        raise LabelCollisionError(f"mutual information arguments share labels {sorted(overlap)}")
    return entropy(state, a) + entropy(state, b) - entropy(state, a + b)


def schmidt_decomposition(psi: PureState, cut: Iterable[str]) -> SchmidtDecomposition:
    """Schmidt decomposition across ``cut`` versus the remaining labels.

    Coefficients are returned in descending order and truncated at
    ``SCHMIDT_CUTOFF``; ``left`` vectors live on the cut labels (layout order),
    ``right`` vectors on the rest.

    Raises:
        EmptyCutError: If the cut is empty or holds every label.
    """
    cut = tuple(cut)
    cut = psi.layout.ordered(cut) if cut else ()
    if not cut or len(cut) == len(psi.layout):
        raise EmptyCutError("Schmidt cut must be a proper non-empty subset of the labels")
    rest = psi.layout.complement(cut)
    u, s, vh = scipy.linalg.svd(_bipartite_matrix(psi, cut), full_matrices=False)
    keep = s > SCHMIDT_CUTOFF
    return SchmidtDecomposition(
        coefficients=s[keep],
        left=u[:, keep],
        right=vh[keep, :].T,
        left_layout=psi.layout.select(cut),
        right_layout=psi.layout.select(rest),
    )


def trace_distance(a: DensityOperator, b: DensityOperator) -> float:
    """``||a - b||_1 / 2``.

    Raises:
        LayoutMismatchError: If the layouts differ.
    """
    if a.layout != b.layout:
        raise LayoutMismatchError(f"layouts {a.layout.labels} and {b.layout.labels} differ")
    diff = a.hermitian_part - b.hermitian_part
    eigenvalues = scipy.linalg.eigh(diff, eigvals_only=True)
    return float(np.sum(np.abs(eigenvalues)) / 2)


def state_trace_distance(a: PureState, b: PureState) -> float:
    """Trace distance between two pure states."""
    return trace_distance(density(a), density(b))
