import itertools
import json
import math

import numpy as np
import pytest

from quibounds.exceptions import (
    DimMismatchError,
    DomainError,
    NormalizationError,
    ParseError,
    UnknownStateError,
)
from quibounds.models.files import AmplitudeRecord, StateRecord, SystemRecord
from quibounds.models.layout import SubsystemLayout
from quibounds.models.states import PureState, ZetaParams
from quibounds.qstate import (
    exchange_final_state,
    load_state,
    make_basis_state,
    make_named,
    make_xi,
    make_zeta,
    random_state,
    rotate_final_state,
    save_state,
    state_from_record,
    zeta_from_x,
)


def test_zeta_from_x_endpoints():
    np.testing.assert_allclose(zeta_from_x(0.0).p, (5 / 8, 3 / 8, 0.0, 0.0))
    np.testing.assert_allclose(zeta_from_x(1.0).p, (3 / 8, 1 / 4, 1 / 8, 1 / 4))


@pytest.mark.parametrize("x", [-0.1, 1.5])
def test_zeta_from_x_rejects_out_of_range(x):
    with pytest.raises(DomainError):
        zeta_from_x(x)


def test_zeta_params_validation():
    with pytest.raises(NormalizationError):
        ZetaParams(c=(1.0, 1.0, 0.0, 0.0))
    with pytest.raises(DomainError):
        ZetaParams(c=(-1.0, 0.0, 0.0, 0.0))


def test_zeta_amplitudes():
    params = zeta_from_x(0.5)
    c0, c1, c2, c3 = params.c
    psi = make_zeta(params)
    assert psi.layout.labels == ("A", "B", "R")
    assert psi.norm == pytest.approx(1.0)
    assert psi.amplitude(0, 1, 1) == pytest.approx(c0 / math.sqrt(2))
    assert psi.amplitude(2, 2, 3) == pytest.approx(c1 / math.sqrt(2))
    assert psi.amplitude(3, 3, 4) == pytest.approx(c2 / math.sqrt(2))
    assert psi.amplitude(5, 5, 5) == pytest.approx(c3)


def test_xi_amplitudes():
    params = zeta_from_x(0.5)
    psi = make_xi(params)
    assert psi.layout.labels == ("A1", "A2", "A3", "R")
    assert psi.amplitude(0, 0, 1, 0) == pytest.approx(params.c[0] / math.sqrt(2))
    assert psi.amplitude(1, 2, 0, 2) == pytest.approx(params.c[1] / math.sqrt(2))


def test_named_states():
    assert make_named("GHZ3").layout.labels == ("A", "B", "R")
    assert make_named("EPR", ("X", "Y")).layout.labels == ("X", "Y")
    product = make_named("ProductEPR")
    assert product.layout.labels == ("A", "B", "R1", "R2")
    assert product.amplitude(1, 0, 1, 0) == pytest.approx(0.5)
    with pytest.raises(UnknownStateError):
        make_named("Werner")


def test_exchange_is_an_involution(zeta_half):
    once = exchange_final_state(zeta_half)
    assert once.amplitude(1, 0, 1) == pytest.approx(zeta_half.amplitude(0, 1, 1))
    twice = exchange_final_state(once)
    assert twice.distance(zeta_half) == pytest.approx(0.0, abs=1e-15)


def test_exchange_needs_equal_dimensions(rng):
    psi = random_state(SubsystemLayout.of(("A", 2), ("B", 3)), rng)
    with pytest.raises(DimMismatchError):
        exchange_final_state(psi)


def test_rotation_moves_each_party_forward(xi_half):
    rotated = rotate_final_state(xi_half)
    # |0 0 1> becomes |1 0 0>
    assert rotated.amplitude(1, 0, 0, 0) == pytest.approx(xi_half.amplitude(0, 0, 1, 0))


def test_rotation_has_order_three(xi_half):
    thrice = rotate_final_state(rotate_final_state(rotate_final_state(xi_half)))
    assert thrice.distance(xi_half) == pytest.approx(0.0, abs=1e-15)
    assert rotate_final_state(xi_half).distance(xi_half) > 0.1


def test_state_file_round_trip(tmp_path, zeta_half):
    path = tmp_path / "zeta.json"
    save_state(zeta_half, path)
    loaded = load_state(path)
    assert loaded.layout == zeta_half.layout
    assert loaded.distance(zeta_half) <= 1e-12


def test_state_file_renormalizes_small_residuals(tmp_path):
    path = tmp_path / "state.json"
    amp = 2**-0.5 + 1e-8
    path.write_text(
        json.dumps(
            {
                "systems": [{"label": "A", "dim": 2}, {"label": "B", "dim": 2}],
                "amplitudes": [
                    {"index": [0, 0], "re": amp},
                    {"index": [1, 1], "re": amp},
                ],
            }
        )
    )
    assert load_state(path).norm == pytest.approx(1.0, abs=1e-15)


def _write(path, payload):
    path.write_text(json.dumps(payload))
    return path


def test_state_file_errors(tmp_path):
    systems = [{"label": "A", "dim": 2}]
    with pytest.raises(ParseError):
        load_state(tmp_path / "missing.json")
    with pytest.raises(ParseError):
        load_state(_write(tmp_path / "bad.json", {"systems": "A"}))
    with pytest.raises(ParseError):
        load_state(
            _write(
                tmp_path / "range.json",
                {"systems": systems, "amplitudes": [{"index": [2], "re": 1.0}]},
            )
        )
    with pytest.raises(ParseError):
        load_state(
            _write(
                tmp_path / "twice.json",
                {
                    "systems": systems,
                    "amplitudes": [{"index": [0], "re": 0.6}, {"index": [0], "re": 0.8}],
                },
            )
        )
    with pytest.raises(NormalizationError):
        load_state(
            _write(
                tmp_path / "norm.json",
                {"systems": systems, "amplitudes": [{"index": [0], "re": 0.5}]},
            )
        )


def test_fragments_cannot_be_saved(tmp_path):
    fragment = PureState.fragment(SubsystemLayout.of(("A", 2)), [0.5, 0.0])
    with pytest.raises(NormalizationError):
        save_state(fragment, tmp_path / "fragment.json")


@pytest.mark.parametrize("index", list(itertools.product(range(2), repeat=3)))
def test_rotation_of_qubit_basis_states(index):
    layout = SubsystemLayout.of(("A1", 2), ("A2", 2), ("A3", 2))
    k1, k2, k3 = index
    rotated = rotate_final_state(make_basis_state(layout, index))
    assert rotated.distance(make_basis_state(layout, (k3, k1, k2))) <= 1e-15


@pytest.mark.parametrize("bad", [math.nan, math.inf, -math.inf])
def test_states_reject_non_finite_amplitudes(bad):
    layout = SubsystemLayout.of(("A", 2))
    with pytest.raises(NormalizationError):
        PureState(layout=layout, amplitudes=[bad, 0.0])
    with pytest.raises(NormalizationError):
        PureState.fragment(layout, [bad, 0.0])


@pytest.mark.parametrize("bad", [math.nan, math.inf])
def test_state_records_reject_non_finite_amplitudes(bad):
    record = StateRecord(
        systems=[SystemRecord(label="A", dim=2)],
        amplitudes=[
            AmplitudeRecord(index=[0], re=1.0),
            AmplitudeRecord(index=[1], re=0.0, im=bad),
        ],
    )
    with pytest.raises(NormalizationError):
        state_from_record(record)


def test_state_file_rejects_nan(tmp_path):
    path = tmp_path / "nan.json"
    path.write_text(
        '{"systems": [{"label": "A", "dim": 2}],'
        ' "amplitudes": [{"index": [0], "re": NaN}, {"index": [1], "re": 1.0}]}'
    )
    with pytest.raises((NormalizationError, ParseError)):
        load_state(path)
