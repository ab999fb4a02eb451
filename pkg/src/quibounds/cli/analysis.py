"""Single-state commands: bounds, subspace verification, exact exchange, state export."""

from __future__ import annotations

import sys
from pathlib import Path

import click

from quibounds.bounds import full_report, load_spec, make_zeta_decomposition, save_spec
from quibounds.cli.config import get_int_setting
from quibounds.cli.utils import (
    abort,
    console,
    display_bound_report,
    display_certs,
    display_sse_result,
)
from quibounds.exceptions import (
    ConsistencyError,
    InputError,
    NotCommonError,
    QuiboundsError,
)
from quibounds.exchange_exact import run_exact_sse
from quibounds.models.certs import CommonSubspaceCert
from quibounds.models.enums import NamedState, StateFamily
from quibounds.models.states import PureState
from quibounds.qstate import load_state, make_named, make_xi, make_zeta, save_state, zeta_from_x
from quibounds.subspace import (
    load_cert,
    save_cert,
    search_basis_common,
    verify_common,
    zeta_common_cert,
)

_STATE_PATH = click.Path(dir_okay=False, path_type=Path)


def _load_cert_for(psi: PureState, path: Path) -> CommonSubspaceCert:
    return load_cert(path, dim=psi.layout.dim_of("A"))


@click.command("bounds")
@click.option("--state", "state_path", type=_STATE_PATH, required=True, help="State file.")
@click.option(
    "--cert",
    "cert_path",
    type=_STATE_PATH,
    default=None,
    help="Common subspace certificate; enables u_new.",
)
@click.option(
    "--spec",
    "spec_path",
    type=_STATE_PATH,
    default=None,
    help="Decomposition file; enables l_new.",
)
@click.option(
    "--format",
    "output_format",
    type=click.Choice(["table", "json"]),
    default="table",
    help="Output format.",
)
@click.option("--out", type=_STATE_PATH, default=None, help="Also write the JSON report here.")
def bounds(
    state_path: Path,
    cert_path: Path | None,
    spec_path: Path | None,
    output_format: str,
    out: Path | None,
) -> None:
    """Evaluate every available bound on the QUI of a state.

    Exits 0 when the bounds are correctly ordered and 2 otherwise.

    Example:

        quibounds bounds --state zeta.json --cert zeta-cert.json --spec zeta-spec.json
    """
    try:
        psi = load_state(state_path)
        cert = _load_cert_for(psi, cert_path) if cert_path else None
        spec = load_spec(spec_path) if spec_path else None
        report = full_report(psi, cert, spec)
    except QuiboundsError as e:
        abort(e)

    if output_format == "json":
        click.echo(report.model_dump_json(indent=2))
    else:
        display_bound_report(report)
    if out is not None:
        out.write_text(report.model_dump_json(indent=2) + "\n", encoding="utf-8")
        console.print(f"[green]Report written to {out}[/green]")

    if not report.chain_ok:
        sys.exit(ConsistencyError.exit_code)


@click.command("verify-subspace")
@click.option("--state", "state_path", type=_STATE_PATH, required=True, help="State file.")
@click.option("--cert", "cert_path", type=_STATE_PATH, default=None, help="Certificate to check.")
@click.option("--search", is_flag=True, help="Search all computational-basis subsets instead.")
@click.option(
    "--out",
    type=_STATE_PATH,
    default=None,
    help="With --search, write the largest verified certificate here.",
)
@click.option("--workers", type=int, default=None, help="Concurrent subset checks.")
def verify_subspace(
    state_path: Path,
    cert_path: Path | None,
    search: bool,
    out: Path | None,
    workers: int | None,
) -> None:
    """Check a common subspace certificate or search for basis subspaces.

    Exits 2 when a given certificate does not verify.

    Example:

        quibounds verify-subspace --state zeta.json --search
    """
    if (cert_path is None) == (not search):
        abort(InputError("pass exactly one of --cert or --search"))

    try:
        psi = load_state(state_path)
        if search:
            found = search_basis_common(
                psi, workers=workers if workers is not None else get_int_setting("workers")
            )
        else:
            assert cert_path is not None
            checked = verify_common(psi, _load_cert_for(psi, cert_path))
    except QuiboundsError as e:
        abort(e)

    if search:
        if not found:
            console.print("no common subspace found")
            return
        display_certs(found)
        if out is not None:
            save_cert(found[0], out)
            console.print(f"[green]Certificate written to {out}[/green]")
        return

    console.print(f"Decomposition residual: {checked.residual_decomposition:.3e}")
    console.print(f"Symmetry residual: {checked.residual_symmetry:.3e}")
    if checked.verified:
        console.print(f"[green]Verified[/green] common subspace of dimension {checked.d_common}")
    else:
        console.print("[red]Not a common subspace[/red]")
        sys.exit(NotCommonError.exit_code)


@click.command("sse-singleshot")
@click.option("--state", "state_path", type=_STATE_PATH, required=True, help="State file.")
@click.option(
    "--cert",
    "cert_path",
    type=_STATE_PATH,
    default=None,
    help="Common subspace certificate; without one both registers are teleported.",
)
def sse_singleshot(state_path: Path, cert_path: Path | None) -> None:
    """Run the exact single-shot subspace exchange and print its ebit ledger.

    Example:

        quibounds sse-singleshot --state zeta.json --cert zeta-cert.json
    """
    try:
        psi = load_state(state_path)
        cert = _load_cert_for(psi, cert_path) if cert_path else None
        result = run_exact_sse(psi, cert)
    except QuiboundsError as e:
        abort(e)
    display_sse_result(result)


@click.command("export-state")
@click.option(
    "--family",
    type=click.Choice([f.value for f in StateFamily]),
    default=None,
    help="Parameterized family.",
)
@click.option("--x", "x", type=float, default=None, help="Sweep parameter in [0, 1].")
@click.option(
    "--named",
    type=click.Choice([n.value for n in NamedState]),
    default=None,
    help="Named reference state.",
)
@click.option("--out", type=_STATE_PATH, required=True, help="State file to write.")
@click.option(
    "--cert-out", type=_STATE_PATH, default=None, help="Zeta only: write the common subspace."
)
@click.option(
    "--spec-out", type=_STATE_PATH, default=None, help="Zeta only: write the decomposition."
)
def export_state(
    family: str | None,
    x: float | None,
    named: str | None,
    out: Path,
    cert_out: Path | None,
    spec_out: Path | None,
) -> None:
    """Write a family or named state to a state file.

    Example:

        quibounds export-state --family zeta --x 0.5 --out zeta.json --cert-out zeta-cert.json
    """
    try:
        if (family is None) == (named is None):
            raise InputError("pass exactly one of --family or --named")
        if family is not None:
            if x is None:
                raise InputError("--family needs --x")
            params = zeta_from_x(x)
            psi = make_zeta(params) if family == StateFamily.ZETA.value else make_xi(params)
        else:
            assert named is not None
            psi = make_named(named)
        if (cert_out or spec_out) and family != StateFamily.ZETA.value:
            raise InputError("--cert-out and --spec-out are available for the zeta family only")

        save_state(psi, out)
        console.print(f"[green]State written to {out}[/green]")
        if cert_out is not None:
            save_cert(verify_common(psi, zeta_common_cert()), cert_out)
            console.print(f"[green]Certificate written to {cert_out}[/green]")
        if spec_out is not None:
            save_spec(make_zeta_decomposition(params), spec_out)
            console.print(f"[green]Decomposition written to {spec_out}[/green]")
    except QuiboundsError as e:
        abort(e)
