import itertools

import numpy as np
import pytest
from scipy.stats import unitary_group

from quibounds.exceptions import (
    DomainError,
    EmptyCutError,
    EmptyKeepSetError,
    LabelCollisionError,
    LayoutMismatchError,
    NotHermitianError,
    NotPositiveError,
    UnknownLabelError,
)
from quibounds.models.layout import SubsystemLayout
from quibounds.models.operators import DensityOperator
from quibounds.qlinalg import (
    apply_local,
    conditional_entropy,
    density,
    entropy,
    mutual_information,
    partial_trace,
    permute,
    reduced_density,
    schmidt_decomposition,
    spectrum,
    state_trace_distance,
    tensor,
    trace_distance,
)
from quibounds.qstate import make_basis_state, make_named, random_state

QUBIT = SubsystemLayout.of(("A", 2))


def test_tensor_concatenates_layouts():
    a = make_basis_state(SubsystemLayout.of(("A", 2)), [1])
    b = make_basis_state(SubsystemLayout.of(("B", 3)), [2])
    ab = tensor(a, b)
    assert ab.layout.labels == ("A", "B")
    assert ab.amplitude(1, 2) == pytest.approx(1.0)


def test_tensor_rejects_shared_labels():
    a = make_basis_state(QUBIT, [0])
    with pytest.raises(LabelCollisionError):
        tensor(a, a)


def test_partial_trace_of_product_state():
    psi = tensor(make_basis_state(QUBIT, [0]), make_named("EPR", ("B", "C")))
    rho_a = partial_trace(density(psi), ["A"])
    np.testing.assert_allclose(rho_a.matrix, [[1, 0], [0, 0]], atol=1e-12)
    rho_b = reduced_density(psi, ["B"])
    np.testing.assert_allclose(rho_b.matrix, np.eye(2) / 2, atol=1e-12)


def test_partial_trace_keeps_layout_order():
    psi = make_named("ProductEPR")
    rho = partial_trace(density(psi), ["R2", "A"])
    assert rho.layout.labels == ("A", "R2")


def test_partial_trace_needs_a_kept_label():
    with pytest.raises(EmptyKeepSetError):
        partial_trace(density(make_named("EPR")), [])


def test_named_state_entropies():
    epr = make_named("EPR")
    assert entropy(epr, ["A"]) == pytest.approx(1.0)
    assert entropy(epr, ["A", "B"]) == pytest.approx(0.0, abs=1e-12)
    assert entropy(epr, []) == 0.0
    ghz = make_named("GHZ3")
    assert entropy(ghz, ["A"]) == pytest.approx(1.0)
    assert entropy(ghz, ["A", "B"]) == pytest.approx(1.0)


def test_entropy_unknown_label():
    with pytest.raises(UnknownLabelError):
        entropy(make_named("EPR"), ["Q"])


def test_complementarity_on_random_tripartite_states(rng):
    layout = SubsystemLayout.of(("A", 3), ("B", 2), ("R", 4))
    for _ in range(20):
        psi = random_state(layout, rng)
        assert entropy(psi, ["A", "B"]) == pytest.approx(entropy(psi, ["R"]), abs=1e-9)
        assert entropy(psi, ["A"]) == pytest.approx(entropy(psi, ["B", "R"]), abs=1e-9)


def test_pure_and_density_paths_agree(rng):
    psi = random_state(SubsystemLayout.of(("A", 2), ("B", 3), ("R", 2)), rng)
    for labels in (["A"], ["B"], ["A", "R"]):
        assert entropy(psi, labels) == pytest.approx(entropy(density(psi), labels), abs=1e-9)


def test_conditional_entropy_of_epr_is_negative():
    epr = make_named("EPR")
    assert conditional_entropy(epr, ["A"], ["B"]) == pytest.approx(-1.0)
    assert mutual_information(epr, ["A"], ["B"]) == pytest.approx(2.0)


def test_conditional_entropy_rejects_overlap():
    with pytest.raises(LabelCollisionError):
        conditional_entropy(make_named("EPR"), ["A"], ["A", "B"])


def test_schmidt_reconstruction(rng):
    psi = random_state(SubsystemLayout.of(("A", 3), ("B", 2), ("R", 4)), rng)
    schmidt = schmidt_decomposition(psi, ["A"])
    rebuilt = permute(psi, ["A", "B", "R"]).amplitudes
    assert np.linalg.norm(schmidt.reconstruct() - rebuilt) <= 1e-9
    assert schmidt.rank == 3
    assert np.all(np.diff(schmidt.coefficients) <= 0)


def test_schmidt_rank_of_epr():
    schmidt = schmidt_decomposition(make_named("EPR"), ["B"])
    assert schmidt.rank == 2
    np.testing.assert_allclose(schmidt.coefficients, [2**-0.5, 2**-0.5])


@pytest.mark.parametrize("cut", [[], ["A", "B"]])
def test_schmidt_rejects_trivial_cuts(cut):
    with pytest.raises(EmptyCutError):
        schmidt_decomposition(make_named("EPR"), cut)


def test_density_operator_validation():
    with pytest.raises(NotHermitianError):
        DensityOperator(layout=QUBIT, matrix=[[0.5, 1.0], [0.0, 0.5]])
    rho = DensityOperator(layout=QUBIT, matrix=[[1.5, 0.0], [0.0, -0.5]])
    with pytest.raises(NotPositiveError):
        spectrum(rho)


def test_trace_distance():
    zero = make_basis_state(QUBIT, [0])
    one = make_basis_state(QUBIT, [1])
    assert state_trace_distance(zero, one) == pytest.approx(1.0)
    assert state_trace_distance(zero, zero) == pytest.approx(0.0, abs=1e-12)
    other = make_basis_state(SubsystemLayout.of(("B", 2)), [0])
    with pytest.raises(LayoutMismatchError):
        trace_distance(density(zero), density(other))


def test_apply_local_and_permute():
    psi = make_basis_state(SubsystemLayout.of(("A", 2), ("B", 3)), [0, 2])
    flip = np.array([[0, 1], [1, 0]])
    flipped = apply_local(psi, flip, ["A"])
    assert flipped.amplitude(1, 2) == pytest.approx(1.0)
    swapped = permute(flipped, ["B", "A"])
    assert swapped.layout.labels == ("B", "A")
    assert swapped.amplitude(2, 1) == pytest.approx(1.0)


def _mixed_state(rng, d):
    psi = random_state(SubsystemLayout.of(("A", d), ("E", 3)), rng)
    return reduced_density(psi, ["A"])


@pytest.mark.parametrize("d", [2, 3, 5])
def test_trace_distance_triangle_inequality(rng, d):
    for _ in range(20):
        a, b, c = (_mixed_state(rng, d) for _ in range(3))
        assert trace_distance(a, c) <= trace_distance(a, b) + trace_distance(b, c) + 1e-12
        assert trace_distance(a, b) == pytest.approx(trace_distance(b, a), abs=1e-12)
        assert 0.0 <= trace_distance(a, b) <= 1.0 + 1e-12


def test_trace_distance_to_maximally_mixed_qubit():
    zero = density(make_basis_state(QUBIT, [0]))
    mixed = DensityOperator(layout=QUBIT, matrix=np.eye(2) / 2)
    assert trace_distance(zero, mixed) == pytest.approx(0.5)


@pytest.mark.parametrize("label", ["A", "B", "R"])
def test_entropy_is_invariant_under_local_unitaries(rng, label):
    layout = SubsystemLayout.of(("A", 3), ("B", 2), ("R", 4))
    psi = random_state(layout, rng)
    u = unitary_group.rvs(layout.dim_of(label), random_state=rng)
    moved = apply_local(psi, u, [label])
    for size in (1, 2):
        for subset in itertools.combinations(layout.labels, size):
            assert entropy(moved, subset) == pytest.approx(entropy(psi, subset), abs=1e-9)


@pytest.mark.parametrize(
    ("dims", "cut", "order"),
    [
        ((2, 2, 2), ["A"], ["A", "B", "R"]),
        ((3, 4, 2), ["B"], ["B", "A", "R"]),
        ((6, 5, 3), ["A", "R"], ["A", "R", "B"]),
        ((4, 6, 6), ["R", "B"], ["B", "R", "A"]),
    ],
)
def test_schmidt_reconstruction_on_random_states(rng, dims, cut, order):
    layout = SubsystemLayout.of(*zip(("A", "B", "R"), dims))
    for _ in range(20):
        psi = random_state(layout, rng)
        schmidt = schmidt_decomposition(psi, cut)
        assert np.linalg.norm(schmidt.reconstruct() - permute(psi, order).amplitudes) <= 1e-9
        assert np.sum(schmidt.coefficients**2) == pytest.approx(1.0, abs=1e-9)
        assert schmidt.rank <= min(schmidt.left_layout.total_dim, schmidt.right_layout.total_dim)


@pytest.mark.parametrize("keep", [["A", "B"], ["A", "R"], ["B", "R"]])
def test_two_party_marginals_of_ghz(ghz, keep):
    expected = np.diag([0.5, 0.0, 0.0, 0.5])
    np.testing.assert_allclose(reduced_density(ghz, keep).matrix, expected, atol=1e-12)


@pytest.mark.parametrize(
    ("first", "second"),
    [(["A", "B"], ["A"]), (["A", "R"], ["R"]), (["B", "R"], ["B"]), (["A", "B"], ["B"])],
)
def test_chained_partial_traces(rng, first, second):
    rho = density(random_state(SubsystemLayout.of(("A", 2), ("B", 3), ("R", 2)), rng))
    chained = partial_trace(partial_trace(rho, first), second)
    direct = partial_trace(rho, second)
    assert chained.layout == direct.layout
    np.testing.assert_allclose(chained.matrix, direct.matrix, atol=1e-12)


@pytest.mark.parametrize("bad", [np.nan, np.inf])
def test_matrices_reject_non_finite_entries(bad):
    with pytest.raises(DomainError):
        DensityOperator(layout=QUBIT, matrix=[[1.0, 0.0], [0.0, bad]])
