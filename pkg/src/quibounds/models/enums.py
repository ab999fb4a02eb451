"""Enum definitions for quibounds."""

from enum import Enum


class NamedState(str, Enum):
    """Named reference states."""

    GHZ3 = "GHZ3"
    EPR = "EPR"
    PRODUCT_EPR = "ProductEPR"


class StateFamily(str, Enum):
    """Parameterized state families."""

    ZETA = "zeta"
    XI = "xi"


class TeleportMechanism(str, Enum):
    """How a protocol step moves quantum information."""

    TELEPORT_QUDIT = "teleport_qudit"
    NONE = "none"


class Provenance(str, Enum):
    """Where a reported value came from."""

    CLOSED_FORM = "closed_form"
    NUMERIC = "numeric"


class BoundColumn(str, Enum):
    """Bound columns of the zeta sweep."""

    L1 = "l1"
    L_NEW = "l_new"
    U_NEW = "u_new"
    U1 = "u1"


class QsrColumn(str, Enum):
    """Rate columns of the xi sweep."""

    U_OLD = "u_old_qsr"
    V_NEW = "v_new_qsr"
    U1 = "u1_qsr"
    U2 = "u2_qsr"
    U3 = "u3_qsr"
    V1 = "v1_qsr"
    V2 = "v2_qsr"
    V3 = "v3_qsr"
