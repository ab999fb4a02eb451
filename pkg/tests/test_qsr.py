import numpy as np
import pytest

from quibounds.exceptions import DomainError, NotCommonError
from quibounds.models.certs import ThreePartyCert
from quibounds.models.enums import Provenance
from quibounds.models.layout import SubsystemLayout
from quibounds.models.states import PureState, ZetaParams
from quibounds.qlinalg import entropy
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
from quibounds.qstate import make_xi, zeta_from_x


def _three_party_ghz() -> PureState:
    layout = SubsystemLayout.of(("A1", 2), ("A2", 2), ("A3", 2), ("R", 1))
    amps = np.zeros(8)
    amps[0] = amps[7] = 2**-0.5
    return PureState(layout=layout, amplitudes=amps)


@pytest.mark.parametrize("x", [0.0, 0.5, 1.0])
def test_xi_common_subspace_verifies(x):
    checked = verify_three_common(make_xi(zeta_from_x(x)), xi_common_cert())
    assert checked.verified
    assert checked.residual_symmetry <= 1e-12


def test_xi_single_level_is_not_common(xi_half):
    assert not verify_three_common(xi_half, ThreePartyCert.from_indices([0], 6)).verified


def test_u_rate_spot_value():
    xi = make_xi(zeta_from_x(0.0))
    assert rate_u_qsr(xi, 1) == pytest.approx(2.329434, abs=1e-5)


@pytest.mark.parametrize("starter", [0, 4])
def test_bad_starter(xi_half, starter):
    with pytest.raises(DomainError):
        rate_u_qsr(xi_half, starter)
    with pytest.raises(DomainError):
        rate_v_qsr(xi_half, xi_common_cert(), starter)


@pytest.mark.parametrize("x", [0.0, 0.5, 1.0])
def test_numeric_matches_closed_form(x):
    params = zeta_from_x(x)
    numeric = qsr_numeric(params)
    closed = qsr_closed_forms(params)
    assert numeric.provenance is Provenance.NUMERIC
    assert closed.provenance is Provenance.CLOSED_FORM
    assert numeric.max_deviation(closed) <= 1e-9


def test_single_starter_rate_matches_report(xi_half):
    report = qsr_report(xi_half, xi_common_cert())
    assert rate_v_qsr(xi_half, xi_common_cert(), 2) == pytest.approx(report.v[1], abs=1e-12)


@pytest.mark.parametrize("x", np.linspace(0.0, 1.0, 11))
def test_rotation_never_costs_more(x):
    closed = qsr_closed_forms(zeta_from_x(x))
    for u, v in zip(closed.u, closed.v):
        assert v <= u + 1e-9
    assert closed.v_new_min <= closed.u_old_min + 1e-9


def test_rates_coincide_without_subspace_weight():
    closed = qsr_closed_forms(zeta_from_x(0.0))
    assert closed.u[0] == pytest.approx(2.329434, abs=1e-5)
    assert closed.v[0] == pytest.approx(closed.u[0], abs=1e-9)


def test_degenerate_coefficients_stay_finite():
    closed = qsr_closed_forms(ZetaParams(c=(1.0, 0.0, 0.0, 0.0)))
    assert all(np.isfinite(closed.u + closed.v))


def test_full_space_rotation_is_free():
    ghz = _three_party_ghz()
    cert = ThreePartyCert.from_indices([0, 1], 2)
    assert verify_three_common(ghz, cert).verified
    report = qsr_report(ghz, cert)
    assert report.v == pytest.approx((0.0, 0.0, 0.0), abs=1e-9)
    assert report.u == pytest.approx((1.0, 1.0, 1.0), abs=1e-9)


def test_stretch_three_preserves_reference(xi_half):
    stretched = stretch_three(xi_half, xi_common_cert())
    assert stretched.layout.labels == ("A1", "A2", "A3", "R", "A1'", "A2'", "A3'")
    assert entropy(stretched, ["R"]) == pytest.approx(entropy(xi_half, ["R"]), abs=1e-9)


def test_stretch_three_rejects_unverified_cert(xi_half):
    with pytest.raises(NotCommonError):
        stretch_three(xi_half, ThreePartyCert.from_indices([0], 6))


def test_stretch_three_without_cert(xi_half):
    stretched = stretch_three(xi_half, None)
    assert entropy(stretched, ["A1", "A2", "A3"]) == pytest.approx(0.0, abs=1e-9)
