"""quibounds CLI entry point."""

from __future__ import annotations

from typing import Any

import click
from rich.table import Table

from quibounds.cli.analysis import bounds, export_state, sse_singleshot, verify_subspace
from quibounds.cli import config as cli_config
from quibounds.cli.config import SECTION, SETTINGS, get_config, save_config, setting_with_source
from quibounds.cli.sweep import qsr_sweep, sweep
from quibounds.cli.utils import console, setup_logging
from quibounds.exceptions import InputError

_LOG_LEVELS = ["DEBUG", "INFO", "WARNING", "ERROR"]


class QuiboundsGroup(click.Group):
    """Command group whose usage errors exit like other input errors."""

    def make_context(
        self,
        info_name: str | None,
        args: list[str],
        parent: click.Context | None = None,
        **extra: Any,
    ) -> click.Context:
        try:
            return super().make_context(info_name, args, parent=parent, **extra)
        except click.UsageError as e:
            e.exit_code = InputError.exit_code
            raise

    def invoke(self, ctx: click.Context) -> Any:
        try:
            return super().invoke(ctx)
        except click.UsageError as e:
            e.exit_code = InputError.exit_code
            raise


@click.group(cls=QuiboundsGroup)
@click.version_option(package_name="quibounds")
@click.option("-v", "--verbose", count=True, help="Log INFO (-v) or DEBUG (-vv) to stderr.")
def cli(verbose: int) -> None:
    """Bounds on quantum uncommon information and exact subspace exchange."""
    setup_logging(verbose)


cli.add_command(bounds)
cli.add_command(sweep)
cli.add_command(qsr_sweep)
cli.add_command(verify_subspace)
cli.add_command(sse_singleshot)
cli.add_command(export_state)


@cli.command()
def configure() -> None:
    """Configure sweep and logging defaults.

    This command prompts for the settings and saves them to ~/.quibounds/config.
    Environment variables (QUIBOUNDS_GRID, QUIBOUNDS_WORKERS, QUIBOUNDS_LOG_LEVEL)
    take precedence over the config file.

    Example:

        quibounds configure
    """
    config = get_config()

    if not config.has_section(SECTION):
        config.add_section(SECTION)

    console.print("[bold]quibounds Configuration[/bold]")
    console.print(f"Config file: {cli_config.CONFIG_FILE}\n")

    grid = click.prompt(
        "Grid points",
        default=int(config.get(SECTION, "grid_points", fallback=SETTINGS["grid_points"][1])),
        type=click.IntRange(min=2),
    )
    config.set(SECTION, "grid_points", str(grid))

    workers = click.prompt(
        "Workers",
        default=int(config.get(SECTION, "workers", fallback=SETTINGS["workers"][1])),
        type=click.IntRange(min=1),
    )
    config.set(SECTION, "workers", str(workers))

    log_level = click.prompt(
        "Log level",
        default=config.get(SECTION, "log_level", fallback=SETTINGS["log_level"][1]),
        type=click.Choice(_LOG_LEVELS, case_sensitive=False),
    )
    config.set(SECTION, "log_level", log_level.upper())

    path = save_config(config)

    console.print(f"\n[green]Configuration saved to {path}[/green]")


@cli.command("show-config")
def show_config() -> None:
    """Show current configuration.

    Displays each setting with the source it comes from: environment
    variable, config file or built-in default.

    Example:

        quibounds show-config
    """
    table = Table(title="quibounds Configuration")
    table.add_column("Setting", style="cyan")
    table.add_column("Value")
    table.add_column("Source", style="dim")

    for key in SETTINGS:
        value, source = setting_with_source(key)
        table.add_row(key, value, source)

    console.print(table)


if __name__ == "__main__":
    cli()
