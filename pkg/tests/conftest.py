"""Shared fixtures."""

from __future__ import annotations

import numpy as np
import pytest

from quibounds.cli import config as cli_config
from quibounds.models.certs import CommonSubspaceCert
from quibounds.models.states import PureState
from quibounds.qstate import make_named, make_xi, make_zeta, random_symmetric_state, zeta_from_x
from quibounds.subspace import zeta_common_cert


@pytest.fixture(autouse=True)
def isolated_config(tmp_path, monkeypatch):
    """Keep CLI settings away from the real home directory and environment."""
    config_dir = tmp_path / "config"
    monkeypatch.setattr(cli_config, "CONFIG_DIR", config_dir)
    monkeypatch.setattr(cli_config, "CONFIG_FILE", config_dir / "config")
    for env_var, _ in cli_config.SETTINGS.values():
        monkeypatch.delenv(env_var, raising=False)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


@pytest.fixture
def zeta_half() -> PureState:
    return make_zeta(zeta_from_x(0.5))


@pytest.fixture
def xi_half() -> PureState:
    return make_xi(zeta_from_x(0.5))


@pytest.fixture
def zeta_cert() -> CommonSubspaceCert:
    return zeta_common_cert()


@pytest.fixture
def ghz() -> PureState:
    return make_named("GHZ3")


@pytest.fixture
def product_epr() -> PureState:
    return make_named("ProductEPR")


@pytest.fixture
def symmetric_case(rng):
    """Factory for a random state with a basis common subspace and its certificate."""

    def build(d: int = 4, d_ref: int = 3, *, local_unitaries: bool = True):
        size = int(rng.integers(1, d))
        subset = sorted(rng.choice(d, size=size, replace=False).tolist())
        psi, v, w = random_symmetric_state(
            d, d_ref, subset, rng, local_unitaries=local_unitaries
        )
        return psi, CommonSubspaceCert.from_indices(subset, d, V=v, W=w)

    return build
