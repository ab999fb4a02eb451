"""Shared utilities for the quibounds CLI."""

from __future__ import annotations

import logging
import sys
from typing import NoReturn

from rich.console import Console
from rich.logging import RichHandler
from rich.table import Table

from quibounds.cli.config import get_setting
from quibounds.exceptions import QuiboundsError
from quibounds.models.bounds import BoundReport
from quibounds.models.certs import CommonSubspaceCert
from quibounds.models.ledger import SseResult

console = Console()
err_console = Console(stderr=True)


def setup_logging(verbosity: int) -> None:
    """Route library logs to stderr through rich.

    ``-v`` selects INFO and ``-vv`` DEBUG; otherwise the configured level applies.
    """
    if verbosity >= 2:
        level = logging.DEBUG
    elif verbosity == 1:
        level = logging.INFO
    else:
        name = get_setting("log_level").upper()
        resolved = logging.getLevelName(name)
        level = resolved if isinstance(resolved, int) else logging.WARNING
    logging.basicConfig(
        level=level,
        format="%(message)s",
        handlers=[RichHandler(console=err_console, show_path=False)],
        force=True,
    )


def abort(error: QuiboundsError) -> NoReturn:
    """Print an error and exit with its exit code."""
    err_console.print(f"[red]Error:[/red] {error}")
    sys.exit(error.exit_code)


def fmt(value: float | None) -> str:
    return "-" if value is None else f"{value:.6f}"


def display_bound_report(report: BoundReport) -> None:
    """Display a bound report as a table with provenance."""
    table = Table(title="QUI Bounds")
    table.add_column("Bound", style="cyan")
    table.add_column("Value (ebits)", justify="right")
    table.add_column("Provenance", style="dim")
    for name, value in report.values().items():
        table.add_row(name, fmt(value), report.provenance.get(name, "not evaluated"))
    console.print(table)

    lower, upper = report.qui_interval
    qci_lower, qci_upper = report.qci_interval
    console.print(f"QUI in [{lower:.6f}, {upper:.6f}]" + (" (pinned)" if report.pinned else ""))
    console.print(f"QCI in [{qci_lower:.6f}, {qci_upper:.6f}]")
    if report.chain_ok:
        console.print("[green]Bound ordering holds[/green]")
    else:
        console.print("[red]Bound ordering violated:[/red]")
        for violation in report.chain_violations:
            console.print(f"  {violation}")


def display_certs(certs: list[CommonSubspaceCert]) -> None:
    """Display verified basis certificates, largest first."""
    table = Table(title="Common Subspaces")
    table.add_column("Indices", style="cyan")
    table.add_column("d_C", justify="right")
    table.add_column("Decomposition residual", justify="right")
    table.add_column("Symmetry residual", justify="right")
    for cert in certs:
        table.add_row(
            "{" + ",".join(str(i) for i in cert.subspace_indices or ()) + "}",
            str(cert.d_common),
            f"{cert.residual_decomposition:.3e}",
            f"{cert.residual_symmetry:.3e}",
        )
    console.print(table)


def display_sse_result(result: SseResult) -> None:
    """Display the ledger and outcome of an exact exchange."""
    table = Table(title="Ebit Ledger")
    table.add_column("Step", style="cyan")
    table.add_column("Mechanism")
    table.add_column("Ebits", justify="right")
    table.add_column("Whole ebits", justify="right")
    table.add_column("Classical bits", justify="right")
    for entry in result.ledger.entries:
        table.add_row(
            entry.step,
            entry.mechanism.value,
            f"{entry.ebits:.6f}",
            str(entry.integer_ebits),
            str(entry.cc_bits),
        )
    console.print(table)
    console.print(f"Common subspace dimension: {result.d_common}")
    console.print(f"Teleported support dimension: {result.d_effective}")
    console.print(f"Total cost: {result.ledger.total:.6f} ebits")
    console.print(f"Naive swap cost: {result.naive_cost:.6f} ebits")
    console.print(f"Savings: {result.savings:.6f} ebits")
    console.print(f"Distance to exchanged state: {result.distance:.3e}")
