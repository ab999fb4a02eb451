"""Parameter sweep commands producing CSV tables."""

from __future__ import annotations

from collections.abc import Callable
from pathlib import Path
from typing import Any

import click
from rich.progress import (
    BarColumn,
    Progress,
    SpinnerColumn,
    TaskProgressColumn,
    TextColumn,
)

from quibounds.cli.config import get_int_setting
from quibounds.cli.utils import abort, console, err_console
from quibounds.exceptions import ConsistencyError, DomainError, QuiboundsError
from quibounds.models.enums import BoundColumn
from quibounds.models.sweeps import QsrSweepConfig, SweepConfig
from quibounds.sweeps import (
    Row,
    qsr_header,
    qsr_row_violations,
    qsr_sweep_rows,
    render_csv,
    write_csv,
    zeta_header,
    zeta_row_violations,
    zeta_sweep_rows,
)


def grid_options(fn: Callable[..., Any]) -> Callable[..., Any]:
    """Options shared by both sweeps."""
    options = [
        click.option("--grid", type=int, default=None, help="Grid points (default 101)."),
        click.option("--x-min", type=float, default=0.0, help="First grid value."),
        click.option("--x-max", type=float, default=1.0, help="Last grid value."),
        click.option(
            "--out",
            type=click.Path(dir_okay=False, path_type=Path),
            default=None,
            help="CSV file to write (default: stdout).",
        ),
        click.option(
            "--numeric/--no-numeric",
            default=True,
            help="Emit columns computed from constructed states.",
        ),
        click.option(
            "--closed-form/--no-closed-form", default=True, help="Emit closed-form columns."
        ),
        click.option("--workers", type=int, default=None, help="Concurrent grid evaluations."),
    ]
    for option in reversed(options):
        fn = option(fn)
    return fn


def _parse_columns(columns: str | None) -> tuple[BoundColumn, ...]:
    if not columns:
        return tuple(BoundColumn)
    names = [c.strip() for c in columns.split(",") if c.strip()]
    valid = {c.value for c in BoundColumn}
    unknown = [n for n in names if n not in valid]
    if unknown:
        raise DomainError(f"unknown columns {unknown}; choose from {sorted(valid)}")
    return tuple(BoundColumn(n) for n in names)


def _run(
    header: list[str],
    build: Callable[[Callable[[int, int], None] | None], list[Row]],
    out: Path | None,
    check: Callable[[Row], list[str]],
) -> None:
    """Evaluate rows and emit CSV; progress is shown only when writing to a file.

    Rows are emitted in full before the ordering check runs.

    Raises:
        ConsistencyError: If any row breaks the expected ordering.
    """
    progress = (
        Progress(
            SpinnerColumn(),
            TextColumn("[progress.description]{task.description}"),
            BarColumn(),
            TaskProgressColumn(),
            console=err_console,
        )
        if out is not None
        else None
    )
    if progress is None:
        rows = build(None)
    else:
        with progress:
            task = progress.add_task("Evaluating grid...", total=None)
            rows = build(lambda done, total: progress.update(task, completed=done, total=total))

    if out is None:
        click.echo(render_csv(header, rows), nl=False)
    else:
        write_csv(header, rows, out)
        console.print(f"[green]{len(rows)} rows written to {out}[/green]")

    violations = [v for row in rows for v in check(row)]
    if violations:
        for violation in violations:
            err_console.print(f"  {violation}")
        raise ConsistencyError(f"{len(violations)} ordering violation(s) in the sweep")


@click.command("sweep")
@grid_options
@click.option(
    "--columns", default=None, help="Comma-separated subset of l1,l_new,u_new,u1 (default all)."
)
def sweep(
    grid: int | None,
    x_min: float,
    x_max: float,
    out: Path | None,
    numeric: bool,
    closed_form: bool,
    workers: int | None,
    columns: str | None,
) -> None:
    """Tabulate the four zeta-family bounds along the sweep parameter.

    Exits 2 after writing the table when a row breaks l1 <= l_new <= u_new <= u1.

    Example:

        quibounds sweep --grid 101 --out zeta.csv
    """
    try:
        config = SweepConfig(
            grid_points=grid if grid is not None else get_int_setting("grid_points"),
            x_min=x_min,
            x_max=x_max,
            outputs=_parse_columns(columns),
            emit_closed_form=closed_form,
            emit_numeric=numeric,
            workers=workers if workers is not None else get_int_setting("workers"),
        )
        _run(
            zeta_header(config),
            lambda cb: zeta_sweep_rows(config, progress_callback=cb),
            out,
            zeta_row_violations,
        )
    except QuiboundsError as e:
        abort(e)


@click.command("qsr-sweep")
@grid_options
@click.option("--per-starter", is_flag=True, help="Also emit the six per-starter rates.")
def qsr_sweep(
    grid: int | None,
    x_min: float,
    x_max: float,
    out: Path | None,
    numeric: bool,
    closed_form: bool,
    workers: int | None,
    per_starter: bool,
) -> None:
    """Tabulate the xi-family rotation rates along the sweep parameter.

    Exits 2 after writing the table when a subspace rate exceeds its merge-and-send rate.

    Example:

        quibounds qsr-sweep --grid 101 --per-starter --out xi.csv
    """
    try:
        config = QsrSweepConfig(
            grid_points=grid if grid is not None else get_int_setting("grid_points"),
            x_min=x_min,
            x_max=x_max,
            emit_closed_form=closed_form,
            emit_numeric=numeric,
            workers=workers if workers is not None else get_int_setting("workers"),
            per_starter=per_starter,
        )
        _run(
            qsr_header(config),
            lambda cb: qsr_sweep_rows(config, progress_callback=cb),
            out,
            qsr_row_violations,
        )
    except QuiboundsError as e:
        abort(e)
