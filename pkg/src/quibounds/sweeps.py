"""Grid sweeps over the state families and their CSV output."""

from __future__ import annotations

import logging
import math
from collections.abc import Callable, Iterable, Sequence
from pathlib import Path
from typing import TextIO

from quibounds._base import CHAIN_SLACK, CSV_SIGNIFICANT_DIGITS
from quibounds._grid import map_ordered, uniform_grid
from quibounds.bounds import (
    bound_l1,
    bound_l_new,
    bound_u1,
    bound_u_new,
    make_zeta_decomposition,
    zeta_closed_forms,
)
from quibounds.exceptions import DomainError
from quibounds.models.enums import BoundColumn, QsrColumn
from quibounds.models.sweeps import QsrSweepConfig, SweepConfig
from quibounds.qsr import qsr_closed_forms, qsr_numeric
from quibounds.qstate import make_zeta, zeta_from_x
from quibounds.subspace import zeta_common_cert

logger = logging.getLogger(__name__)

Row = dict[str, float]
ProgressCallback = Callable[[int, int], None]

NUMERIC_SUFFIX = "_num"


def zeta_header(config: SweepConfig) -> list[str]:
    names = [c.value for c in config.columns]
    header = ["x"]
    if config.emit_closed_form:
        header += names
    if config.emit_numeric:
        header += [n + NUMERIC_SUFFIX for n in names]
    return header


def _zeta_row(x: float, config: SweepConfig) -> Row:
    params = zeta_from_x(x)
    row: Row = {"x": x}
    if config.emit_closed_form:
        closed = zeta_closed_forms(params).model_dump()
        row.update({c.value: closed[c.value] for c in config.columns})
    if config.emit_numeric:
        psi = make_zeta(params)
        evaluators: dict[BoundColumn, Callable[[], float]] = {
            BoundColumn.L1: lambda: bound_l1(psi),
            BoundColumn.L_NEW: lambda: bound_l_new(make_zeta_decomposition(params)),
            BoundColumn.U_NEW: lambda: bound_u_new(psi, zeta_common_cert()),
            BoundColumn.U1: lambda: bound_u1(psi),
        }
        row.update({c.value + NUMERIC_SUFFIX: evaluators[c]() for c in config.columns})
    return row


def zeta_sweep_rows(
    config: SweepConfig, *, progress_callback: ProgressCallback | None = None
) -> list[Row]:
    """One row of zeta-family bounds per grid point, in grid order."""
    grid = uniform_grid(config.grid_points, config.x_min, config.x_max)
    logger.info("zeta sweep: %d points, %d worker(s)", len(grid), config.workers)
    return map_ordered(
        lambda x: _zeta_row(x, config),
        grid,
        workers=config.workers,
        progress_callback=progress_callback,
    )


def qsr_header(config: QsrSweepConfig) -> list[str]:
    names = [QsrColumn.U_OLD.value, QsrColumn.V_NEW.value]
    if config.per_starter:
        names += [c.value for c in QsrColumn if c not in (QsrColumn.U_OLD, QsrColumn.V_NEW)]
    header = ["x"]
    if config.emit_closed_form:
        header += names
    if config.emit_numeric:
        header += [n + NUMERIC_SUFFIX for n in names]
    return header


def _qsr_cells(report_u: Sequence[float], report_v: Sequence[float]) -> Row:
    cells = {QsrColumn.U_OLD.value: min(report_u), QsrColumn.V_NEW.value: min(report_v)}
    for k in range(3):
        cells[f"u{k + 1}_qsr"] = report_u[k]
        cells[f"v{k + 1}_qsr"] = report_v[k]
    return cells


def _qsr_row(x: float, config: QsrSweepConfig) -> Row:
    params = zeta_from_x(x)
    row: Row = {"x": x}
    if config.emit_closed_form:
        closed = qsr_closed_forms(params)
        row.update(_qsr_cells(closed.u, closed.v))
    if config.emit_numeric:
        numeric = qsr_numeric(params)
        row.update(
            {k + NUMERIC_SUFFIX: v for k, v in _qsr_cells(numeric.u, numeric.v).items()}
        )
    return row


def qsr_sweep_rows(
    config: QsrSweepConfig, *, progress_callback: ProgressCallback | None = None
) -> list[Row]:
    """One row of xi-family rotation rates per grid point, in grid order."""
    grid = uniform_grid(config.grid_points, config.x_min, config.x_max)
    logger.info("qsr sweep: %d points, %d worker(s)", len(grid), config.workers)
    return map_ordered(
        lambda x: _qsr_row(x, config),
        grid,
        workers=config.workers,
        progress_callback=progress_callback,
    )


def zeta_row_violations(row: Row, *, slack: float = CHAIN_SLACK) -> list[str]:
    """Adjacent bound columns of a row that break l1 <= l_new <= u_new <= u1.

    Closed-form and numeric columns are checked separately; columns missing
    from the row are skipped.
    """
    violations: list[str] = []
    for suffix in ("", NUMERIC_SUFFIX):
        present = [c.value + suffix for c in BoundColumn if c.value + suffix in row]
        for lo, hi in zip(present, present[1:]):
            if row[lo] > row[hi] + slack:
                violations.append(f"x={row['x']:g}: {lo}={row[lo]:.6f} > {hi}={row[hi]:.6f}")
    return violations


def qsr_row_violations(row: Row, *, slack: float = CHAIN_SLACK) -> list[str]:
    """Subspace rates of a row that exceed the matching merge-and-send rates."""
    pairs = [(QsrColumn.V_NEW.value, QsrColumn.U_OLD.value)]
    pairs += [(f"v{k}_qsr", f"u{k}_qsr") for k in (1, 2, 3)]
    violations: list[str] = []
    for suffix in ("", NUMERIC_SUFFIX):
        for v_name, u_name in pairs:
            v, u = v_name + suffix, u_name + suffix
            if v in row and u in row and row[v] > row[u] + slack:
                violations.append(f"x={row['x']:g}: {v}={row[v]:.6f} > {u}={row[u]:.6f}")
    return violations


def format_cell(value: float) -> str:
    """Fixed 12-significant-digit rendering; ``-0`` prints as ``0``.

    Raises:
        DomainError: If ``value`` is NaN or infinite.
    """
    if not math.isfinite(value):
        raise DomainError(f"non-finite value {value} in CSV output")
    text = f"{value:.{CSV_SIGNIFICANT_DIGITS}g}"
    return "0" if text == "-0" else text


def render_csv(header: Sequence[str], rows: Iterable[Row]) -> str:
    """Comma-separated text with a header row and LF line endings."""
    lines = [",".join(header)]
    lines += [",".join(format_cell(row[name]) for name in header) for row in rows]
    return "\n".join(lines) + "\n"


def write_csv(header: Sequence[str], rows: Iterable[Row], out: str | Path | TextIO) -> None:
    """Write rows to a path or an open text stream."""
    text = render_csv(header, rows)
    if isinstance(out, (str, Path)):
        Path(out).write_text(text, encoding="utf-8", newline="\n")
    else:
        out.write(text)
