"""Shared numeric tolerances and defaults."""

from __future__ import annotations

# Eigenvalues at or below this contribute nothing to an entropy (0 log 0 = 0).
EIG_CUTOFF = 1e-12

HERMITIAN_TOL = 1e-10
TRACE_TOL = 1e-9
POSITIVITY_TOL = 1e-8
DENSITY_EIG_TOL = 1e-10

STATE_NORM_TOL = 1e-9
FILE_NORM_TOL = 1e-6
UNITARY_TOL = 1e-10
ORTHONORMAL_TOL = 1e-10

VERIFY_TOL = 1e-9
IDENTITY_TOL = 1e-9
CHAIN_SLACK = 1e-7
ANCILLA_TOL = 1e-10
EXCHANGE_TOL = 1e-9

SCHMIDT_CUTOFF = 1e-10

# Combinatorial guards.
MAX_SEARCH_DIM = 12
MAX_PARTITION_DIM = 12

DEFAULT_GRID_POINTS = 101
DEFAULT_WORKERS = 1
CSV_SIGNIFICANT_DIGITS = 12

PRIMED = "'"


def primed(label: str) -> str:
    """Return the ancilla label paired with ``label`` (``A`` -> ``A'``)."""
    return f"{label}{PRIMED}"
