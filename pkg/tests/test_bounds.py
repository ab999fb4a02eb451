import json
import logging
import math

import numpy as np
import pytest

from quibounds._base import DEFAULT_GRID_POINTS
from quibounds._grid import uniform_grid
from quibounds.bounds import (
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
    DomainError,
    EmptyFamilyError,
    NotCommonError,
    ParseError,
    UnknownLabelError,
)
from quibounds.models.bounds import BoundReport, DecompositionSpec, IsometrySplit
from quibounds.models.certs import CommonSubspaceCert
from quibounds.models.layout import SubsystemLayout
from quibounds.models.states import ZetaParams
from quibounds.qstate import make_named, make_zeta, random_state, zeta_from_x

GRID = uniform_grid(DEFAULT_GRID_POINTS)


def test_zeta_closed_form_spot_values():
    at_zero = zeta_closed_forms(zeta_from_x(0.0))
    assert at_zero.l1 == pytest.approx(0.25)
    assert at_zero.l_new == pytest.approx(1.0)
    assert at_zero.u_new == pytest.approx(1.954434, abs=1e-5)
    assert at_zero.u1 == pytest.approx(1.954434, abs=1e-5)
    at_one = zeta_closed_forms(zeta_from_x(1.0))
    assert at_one.l1 == pytest.approx(0.125)
    assert at_one.l_new == pytest.approx(0.625)
    assert at_one.u_new == pytest.approx(1.231844, abs=1e-5)
    assert at_one.u1 == pytest.approx(2.530639, abs=1e-5)


@pytest.mark.parametrize("x", GRID)
def test_zeta_numeric_matches_closed_form(x, zeta_cert):
    params = zeta_from_x(x)
    psi = make_zeta(params)
    closed = zeta_closed_forms(params)
    assert bound_l1(psi) == pytest.approx(closed.l1, abs=1e-9)
    assert bound_l_new(make_zeta_decomposition(params)) == pytest.approx(closed.l_new, abs=1e-9)
    assert bound_u_new(psi, zeta_cert) == pytest.approx(closed.u_new, abs=1e-9)
    assert bound_u1(psi) == pytest.approx(closed.u1, abs=1e-9)
    assert closed.l1 <= closed.l_new + 1e-7
    assert closed.l_new <= closed.u_new + 1e-7
    assert closed.u_new <= closed.u1 + 1e-7


@pytest.mark.parametrize("x", GRID)
def test_merge_rates_add_up_on_zeta(x, zeta_cert):
    breakdown = u_new_breakdown(make_zeta(zeta_from_x(x)), zeta_cert)
    assert breakdown.identity_residual <= 1e-9
    assert breakdown.merge_a + breakdown.merge_b == pytest.approx(breakdown.u_new, abs=1e-9)
    assert breakdown.gap >= -1e-9


def test_merge_rates_add_up_on_random_states(symmetric_case):
    for _ in range(100):
        psi, cert = symmetric_case()
        breakdown = u_new_breakdown(psi, cert)
        assert breakdown.identity_residual <= 1e-9
        assert breakdown.u_new <= bound_u1(psi) + 1e-9


def test_u_new_without_cert_is_u1(zeta_half):
    assert bound_u_new(zeta_half, None) == pytest.approx(bound_u1(zeta_half), abs=1e-9)


def test_u_new_rejects_unverified_cert(zeta_half):
    with pytest.raises(NotCommonError):
        bound_u_new(zeta_half, CommonSubspaceCert.from_indices([0], 6))


def test_zeta_decomposition_rates():
    params = zeta_from_x(0.0)
    spec = make_zeta_decomposition(params)
    entropy_of_p = -(5 / 8) * math.log2(5 / 8) - (3 / 8) * math.log2(3 / 8)
    np.testing.assert_allclose(spec.rates, (3 / 8, 0.0, 5 / 8, entropy_of_p))
    assert spec.phi_c.layout.labels == ("A3", "R3", "R4", "B3")


def test_l_new_of_random_zeta_decompositions(rng):
    for _ in range(100):
        c = np.abs(rng.standard_normal(4))
        c /= np.linalg.norm(c)
        params = ZetaParams(c=tuple(c))
        p0, p1, _, _ = params.p
        assert bound_l_new(make_zeta_decomposition(params)) == pytest.approx(p0 + p1, abs=1e-9)


def test_l_new_requires_component_labels():
    spec = make_product_epr_decomposition()
    broken = DecompositionSpec(
        rates=spec.rates,
        phi_l=make_named("EPR", ("A1", "X")),
        phi_b=spec.phi_b,
        phi_r=spec.phi_r,
        phi_c=spec.phi_c,
    )
    with pytest.raises(UnknownLabelError):
        bound_l_new(broken)


def test_decomposition_rates_must_be_non_negative():
    spec = make_product_epr_decomposition()
    with pytest.raises(DomainError):
        DecompositionSpec(
            rates=(-1.0, 0.0, 0.0, 0.0),
            phi_l=spec.phi_l,
            phi_b=spec.phi_b,
            phi_r=spec.phi_r,
            phi_c=spec.phi_c,
        )


def test_ghz_has_no_uncommon_information(ghz):
    assert bound_l1(ghz) == pytest.approx(0.0, abs=1e-9)
    assert bound_u_new(ghz, CommonSubspaceCert.full_space(2)) == pytest.approx(0.0, abs=1e-9)
    assert bound_u1(ghz) == pytest.approx(1.0)
    report = full_report(ghz, CommonSubspaceCert.full_space(2))
    assert report.chain_ok
    assert report.pinned
    assert report.qui_interval[1] == pytest.approx(0.0, abs=1e-9)
    assert report.qci_interval[0] == pytest.approx(1.0)


def test_product_epr_is_pinned_at_two(product_epr):
    spec = make_product_epr_decomposition()
    assert bound_l_new(spec) == pytest.approx(2.0, abs=1e-9)
    assert bound_u1(product_epr) == pytest.approx(2.0, abs=1e-9)
    assert bound_l1(product_epr) == pytest.approx(0.0, abs=1e-9)
    assert bound_l2(product_epr) == pytest.approx(2.0, abs=1e-9)
    report = full_report(product_epr, spec=spec)
    assert report.chain_ok
    assert report.pinned
    assert report.qui_interval == pytest.approx((2.0, 2.0), abs=1e-9)


def test_l2_dominates_l1_on_random_states(rng):
    layout = SubsystemLayout.of(("A", 2), ("B", 2), ("R", 3))
    for _ in range(100):
        psi = random_state(layout, rng)
        assert bound_l2(psi) >= bound_l1(psi) - 1e-9


def test_l2_needs_a_split(zeta_half):
    with pytest.raises(EmptyFamilyError):
        bound_l2(zeta_half, [])


def test_trivial_partitions_give_signed_l1(rng):
    psi = random_state(SubsystemLayout.of(("A", 2), ("B", 3), ("R", 3)), rng)
    gap = bound_l1(psi)
    values = {split_value(psi, IsometrySplit(partition=p)) for p in [(2,) * 3, (1,) * 3]}
    assert max(values) == pytest.approx(gap, abs=1e-9)
    assert min(values) == pytest.approx(-gap, abs=1e-9)


def test_split_decomposition_reproduces_split_value(product_epr):
    split = IsometrySplit(factor_labels=("R1",))
    spec = spec_from_split(product_epr, split)
    assert spec.rates == (0.0, 0.0, 0.0, 1.0)
    assert bound_l_new(spec) == pytest.approx(split_value(product_epr, split), abs=1e-9)
    assert bound_l_new(spec) == pytest.approx(2.0, abs=1e-9)


def test_rotated_split(rng):
    psi = random_state(SubsystemLayout.of(("A", 2), ("B", 2), ("R", 2)), rng)
    hadamard = np.array([[1.0, 1.0], [1.0, -1.0]]) / math.sqrt(2)
    split = IsometrySplit(partition=(1, 2), pre_rotation=hadamard)
    spec = spec_from_split(psi, split)
    assert bound_l_new(spec) == pytest.approx(split_value(psi, split), abs=1e-9)


def test_default_splits(product_epr):
    splits = default_splits(product_epr)
    assert len(splits) == 2**4 + 2
    assert splits[0].partition == (2, 2, 2, 2)
    assert splits[1].partition == (1, 1, 1, 1)
    assert [s.factor_labels for s in splits[-2:]] == [("R1",), ("R2",)]


def test_default_splits_fall_back_for_large_references(rng, caplog):
    psi = random_state(SubsystemLayout.of(("A", 2), ("B", 2), ("R", 13)), rng)
    with caplog.at_level(logging.WARNING, logger="quibounds.bounds"):
        splits = default_splits(psi)
    assert len(splits) == 2
    assert "trivial splits" in caplog.text


def test_isometry_split_validation():
    with pytest.raises(DomainError):
        IsometrySplit()
    with pytest.raises(DomainError):
        IsometrySplit(partition=(1, 2), factor_labels=("R",))
    with pytest.raises(DomainError):
        IsometrySplit(partition=(1, 3))
    with pytest.raises(DomainError):
        IsometrySplit(partition=(1, 2), pre_rotation=np.ones((2, 2)))


def test_full_zeta_report(zeta_half, zeta_cert):
    report = full_report(zeta_half, zeta_cert, make_zeta_decomposition(zeta_from_x(0.5)))
    closed = zeta_closed_forms(zeta_from_x(0.5))
    assert report.chain_ok
    assert report.l_new == pytest.approx(closed.l_new, abs=1e-9)
    assert report.u_new == pytest.approx(closed.u_new, abs=1e-9)
    assert report.l1 <= report.l2_found + 1e-7
    assert report.l2_found <= report.u_new + 1e-7
    assert set(report.provenance) == {"l1", "l2_found", "l_new", "u_new", "u1"}
    assert "not the supremum" in report.provenance["l_new"]


def test_report_without_optional_bounds(zeta_half):
    report = full_report(zeta_half)
    assert report.l_new is None
    assert report.u_new is None
    assert report.chain_ok


def test_report_flags_ordering_violations():
    report = BoundReport(l1=1.0, l2_found=1.0, l_new=2.0, u1=1.5)
    assert not report.chain_ok
    assert any(v.startswith("l_new=") for v in report.chain_violations)
    assert not BoundReport(l1=0.0, l2_found=0.0, u1=1.0).pinned


def test_spec_files(tmp_path):
    zeta_path = tmp_path / "zeta.json"
    zeta_path.write_text(json.dumps({"family": "zeta", "x": 0.5}))
    assert load_spec(zeta_path).family == "zeta"

    pinned_path = tmp_path / "pinned.json"
    pinned_path.write_text(json.dumps({"family": "product_epr"}))
    assert bound_l_new(load_spec(pinned_path)) == pytest.approx(2.0)

    explicit_path = tmp_path / "explicit.json"
    spec = make_zeta_decomposition(zeta_from_x(1.0))
    save_spec(spec, explicit_path)
    loaded = load_spec(explicit_path)
    assert loaded.family is None
    assert bound_l_new(loaded) == pytest.approx(bound_l_new(spec), abs=1e-9)

    bad_path = tmp_path / "bad.json"
    bad_path.write_text(json.dumps({"family": "zeta"}))
    with pytest.raises(ParseError):
        load_spec(bad_path)
