"""quibounds - bounds on quantum uncommon information and exact subspace exchange."""

from quibounds._version import __version__
from quibounds.bounds import (
    best_split,
    bound_l1,
    bound_l2,
    bound_l_new,
    bound_u1,
    bound_u_new,
    default_splits,
    full_report,
    load_spec,
    make_product_epr_decomposition,
    make_zeta_decomposition,
    save_spec,
    spec_from_split,
    split_value,
    u_new_breakdown,
    zeta_closed_forms,
)
from quibounds.exceptions import (
    ConsistencyError,
    DimMismatchError,
    DomainError,
    EmptyCutError,
    EmptyFamilyError,
    EmptyKeepSetError,
    InputError,
    LabelCollisionError,
    LayoutMismatchError,
    NormalizationError,
    NotCommonError,
    NotHermitianError,
    NotPositiveError,
    ParseError,
    ProtocolError,
    QuiboundsError,
    TooLargeError,
    UnknownLabelError,
    UnknownStateError,
    VerificationError,
)
from quibounds.exchange_exact import effective_dimension, naive_swap_cost, run_exact_sse, savings
from quibounds.models import (
    BoundReport,
    CommonSubspaceCert,
    DecompositionSpec,
    DensityOperator,
    EbitLedger,
    IsometrySplit,
    LedgerEntry,
    NamedState,
    Operator,
    PureState,
    QsrRateReport,
    QsrSweepConfig,
    SchmidtDecomposition,
    SseResult,
    StretchedState,
    Subsystem,
    SubsystemLayout,
    SweepConfig,
    SweepParam,
    ThreePartyCert,
    UNewBreakdown,
    ZetaBounds,
    ZetaParams,
)
from quibounds.qlinalg import (
    conditional_entropy,
    density,
    entropy,
    mutual_information,
    partial_trace,
    schmidt_decomposition,
    tensor,
    trace_distance,
    von_neumann_entropy,
)
from quibounds.qsr import (
    qsr_closed_forms,
    qsr_numeric,
    qsr_report,
    rate_u_qsr,
    rate_v_qsr,
    stretch_three,
    verify_three_common,
    xi_common_cert,
)
from quibounds.qstate import (
    exchange_final_state,
    load_state,
    make_named,
    make_xi,
    make_zeta,
    rotate_final_state,
    save_state,
    zeta_from_x,
)
from quibounds.subspace import (
    build_stretch_unitary,
    load_cert,
    save_cert,
    search_basis_common,
    stretch,
    union_cert,
    verify_common,
    zeta_common_cert,
)

__all__ = [
    # Version
    "__version__",
    # Exceptions
    "QuiboundsError",
    "InputError",
    "VerificationError",
    "ProtocolError",
    "ConsistencyError",
    "DimMismatchError",
    "DomainError",
    "EmptyCutError",
    "EmptyFamilyError",
    "EmptyKeepSetError",
    "LabelCollisionError",
    "LayoutMismatchError",
    "NormalizationError",
    "NotCommonError",
    "NotHermitianError",
    "NotPositiveError",
    "ParseError",
    "TooLargeError",
    "UnknownLabelError",
    "UnknownStateError",
    # Models
    "Subsystem",
    "SubsystemLayout",
    "Operator",
    "DensityOperator",
    "PureState",
    "SchmidtDecomposition",
    "SweepParam",
    "ZetaParams",
    "NamedState",
    "CommonSubspaceCert",
    "StretchedState",
    "ThreePartyCert",
    "BoundReport",
    "DecompositionSpec",
    "IsometrySplit",
    "UNewBreakdown",
    "ZetaBounds",
    "QsrRateReport",
    "EbitLedger",
    "LedgerEntry",
    "SseResult",
    "SweepConfig",
    "QsrSweepConfig",
    # Linear algebra
    "tensor",
    "density",
    "partial_trace",
    "von_neumann_entropy",
    "entropy",
    "conditional_entropy",
    "mutual_information",
    "schmidt_decomposition",
    "trace_distance",
    # States
    "make_zeta",
    "make_xi",
    "zeta_from_x",
    "make_named",
    "exchange_final_state",
    "rotate_final_state",
    "load_state",
    "save_state",
    # Common subspaces
    "verify_common",
    "search_basis_common",
    "union_cert",
    "build_stretch_unitary",
    "stretch",
    "zeta_common_cert",
    "load_cert",
    "save_cert",
    # Bounds
    "bound_l1",
    "bound_l2",
    "bound_l_new",
    "bound_u_new",
    "bound_u1",
    "u_new_breakdown",
    "best_split",
    "split_value",
    "default_splits",
    "spec_from_split",
    "make_zeta_decomposition",
    "make_product_epr_decomposition",
    "zeta_closed_forms",
    "full_report",
    "load_spec",
    "save_spec",
    # State rotation
    "verify_three_common",
    "stretch_three",
    "rate_u_qsr",
    "rate_v_qsr",
    "qsr_closed_forms",
    "qsr_numeric",
    "qsr_report",
    "xi_common_cert",
    # Exact exchange
    "naive_swap_cost",
    "effective_dimension",
    "run_exact_sse",
    "savings",
]
