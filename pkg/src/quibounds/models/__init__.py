"""Data models for quibounds."""

from quibounds.models.bounds import (
    BoundReport,
    DecompositionSpec,
    IsometrySplit,
    UNewBreakdown,
    ZetaBounds,
)
from quibounds.models.certs import (
    CommonSubspaceCert,
    StretchedState,
    SubspaceSplit,
    ThreePartyCert,
)
from quibounds.models.enums import (
    BoundColumn,
    NamedState,
    Provenance,
    QsrColumn,
    StateFamily,
    TeleportMechanism,
)
from quibounds.models.layout import Subsystem, SubsystemLayout
from quibounds.models.ledger import EbitLedger, LedgerEntry, SseResult
from quibounds.models.operators import DensityOperator, Operator
from quibounds.models.qsr import QsrRateReport
from quibounds.models.states import PureState, SchmidtDecomposition, SweepParam, ZetaParams
from quibounds.models.sweeps import QsrSweepConfig, SweepConfig

__all__ = [
    # Enums
    "BoundColumn",
    "NamedState",
    "Provenance",
    "QsrColumn",
    "StateFamily",
    "TeleportMechanism",
    # Layouts and operators
    "Subsystem",
    "SubsystemLayout",
    "Operator",
    "DensityOperator",
    # States
    "PureState",
    "SchmidtDecomposition",
    "SweepParam",
    "ZetaParams",
    # Subspaces
    "CommonSubspaceCert",
    "StretchedState",
    "SubspaceSplit",
    "ThreePartyCert",
    # Bounds
    "BoundReport",
    "DecompositionSpec",
    "IsometrySplit",
    "UNewBreakdown",
    "ZetaBounds",
    # Rotation rates
    "QsrRateReport",
    # Exchange accounting
    "EbitLedger",
    "LedgerEntry",
    "SseResult",
    # Sweeps
    "QsrSweepConfig",
    "SweepConfig",
]
