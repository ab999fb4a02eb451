import math

import pytest

from quibounds.exceptions import DomainError, NotCommonError
from quibounds.exchange_exact import effective_dimension, naive_swap_cost, run_exact_sse, savings
from quibounds.models.certs import CommonSubspaceCert
from quibounds.models.enums import TeleportMechanism
from quibounds.qstate import exchange_final_state, make_zeta, zeta_from_x


@pytest.mark.parametrize(
    ("d", "expected"),
    [(2, 2.0), (4, 4.0), (6, 2 * math.log2(6))],
)
def test_naive_swap_cost(d, expected):
    assert naive_swap_cost(d) == pytest.approx(expected)


def test_naive_swap_cost_needs_two_levels():
    with pytest.raises(DomainError):
        naive_swap_cost(1)


@pytest.mark.parametrize(
    ("d", "d_common", "expected"),
    [(6, 0, 6), (6, 3, 4), (6, 5, 2), (6, 6, 1), (2, 1, 2)],
)
def test_effective_dimension(d, d_common, expected):
    assert effective_dimension(d, d_common) == expected


@pytest.mark.parametrize("d_common", [-1, 7])
def test_effective_dimension_bounds(d_common):
    with pytest.raises(DomainError):
        effective_dimension(6, d_common)


@pytest.mark.parametrize("x", [0.0, 0.5, 1.0])
def test_zeta_exchange(x, zeta_cert):
    result = run_exact_sse(make_zeta(zeta_from_x(x)), zeta_cert)
    assert result.distance <= 1e-10
    assert result.d_common == 3
    assert result.d_effective == 4
    assert result.ledger.total == pytest.approx(4.0)
    assert result.naive_cost == pytest.approx(5.169925, abs=1e-6)
    assert result.savings == pytest.approx(1.169925, abs=1e-6)
    assert result.ledger.total_integer == 4
    assert result.ledger.total_cc_bits == 8
    assert [e.mechanism for e in result.ledger.entries] == [TeleportMechanism.TELEPORT_QUDIT] * 2


def test_zeta_exchange_lands_on_swapped_state(zeta_half, zeta_cert):
    result = run_exact_sse(zeta_half, zeta_cert)
    assert result.final.distance(exchange_final_state(zeta_half)) <= 1e-10


def test_ghz_exchange_is_free(ghz):
    result = run_exact_sse(ghz, CommonSubspaceCert.full_space(2))
    assert result.ledger.total == 0.0
    assert result.savings == pytest.approx(2.0)
    assert all(e.mechanism is TeleportMechanism.NONE for e in result.ledger.entries)


def test_exchange_without_cert_saves_nothing(zeta_half):
    result = run_exact_sse(zeta_half, None)
    assert result.d_effective == 6
    assert result.savings == pytest.approx(0.0, abs=1e-12)
    assert result.distance <= 1e-10


def test_random_symmetric_exchanges(symmetric_case):
    for _ in range(10):
        psi, cert = symmetric_case(local_unitaries=True)
        result = run_exact_sse(psi, cert)
        assert result.distance <= 1e-9
        assert result.d_effective == effective_dimension(4, cert.d_common)
        assert savings(psi, cert) == pytest.approx(result.savings)


def test_exchange_rejects_unverified_cert(zeta_half):
    with pytest.raises(NotCommonError):
        run_exact_sse(zeta_half, CommonSubspaceCert.from_indices([0], 6))
