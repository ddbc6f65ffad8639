import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from relsteer import qstate
from relsteer.errors import DomainError, InvalidState, NotHermitian, NotPositive
from relsteer.linalg import jacobi_eigh
from relsteer.qstate import BlochDecomposition, PureFamilyParams, WernerParams

import oracles
from helpers import random_states


def test_from_bloch_zero_is_maximally_mixed():
    rho = qstate.from_bloch(BlochDecomposition())
    np.testing.assert_allclose(np.asarray(rho), np.eye(4) / 4, atol=1e-15)


def test_from_bloch_singlet_matches_hand_expansion():
    rho = qstate.from_bloch(BlochDecomposition(c=-np.eye(3)))
    expected = np.zeros((4, 4))
    expected[1, 1] = expected[2, 2] = 0.5
    expected[1, 2] = expected[2, 1] = -0.5
    np.testing.assert_allclose(np.asarray(rho), expected, atol=1e-15)
    np.testing.assert_allclose(np.asarray(rho), oracles.singlet_matrix(), atol=1e-15)


def test_from_bloch_unphysical_raises():
    # oracle: the same matrix has eigenvalue -1/2
    m = oracles.pauli_expansion([0] * 3, [0] * 3, np.eye(3))
    assert np.linalg.eigvalsh(m)[0] == pytest.approx(-0.5)
    with pytest.raises(NotPositive):
        qstate.from_bloch(BlochDecomposition(c=np.eye(3)))


def test_bloch_components_out_of_range():
    with pytest.raises(DomainError):
        BlochDecomposition(s=[1.5, 0, 0])


@pytest.mark.parametrize(
    "make, s, t, c",
    [
        (qstate.maximally_mixed, [0, 0, 0], [0, 0, 0], np.zeros((3, 3))),
        (qstate.singlet, [0, 0, 0], [0, 0, 0], -np.eye(3)),
        (lambda: qstate.product_state(0), [0, 0, 1], [0, 0, 1], np.diag([0, 0, 1])),
    ],
)
def test_to_bloch_examples(make, s, t, c):
    d = qstate.to_bloch(make())
    np.testing.assert_allclose(d.s, s, atol=1e-14)
    np.testing.assert_allclose(d.t, t, atol=1e-14)
    np.testing.assert_allclose(d.c, c, atol=1e-14)


def test_round_trip_1000_random_states():
    for rho in random_states(1000, seed=7):
        back = qstate.from_bloch(qstate.to_bloch(rho))
        assert np.max(np.abs(np.asarray(back) - np.asarray(rho))) <= 1e-12


def test_to_bloch_matches_oracle_expansion():
    for rho in random_states(50, seed=3):
        d = qstate.to_bloch(rho)
        np.testing.assert_allclose(oracles.pauli_expansion(d.s, d.t, d.c), np.asarray(rho), atol=1e-12)


def test_werner_examples():
    np.testing.assert_allclose(np.asarray(qstate.werner(WernerParams(-1, -1, -1))),
                               oracles.singlet_matrix(), atol=1e-15)
    np.testing.assert_allclose(np.asarray(qstate.werner(WernerParams(0, 0, 0))), np.eye(4) / 4)
    rho = np.asarray(qstate.werner(WernerParams(-0.8, -0.8, -0.8)))
    np.testing.assert_allclose(np.diag(rho).real, [0.05, 0.45, 0.45, 0.05], atol=1e-15)
    assert rho[1, 2] == pytest.approx(-0.4, abs=1e-15)


def test_werner_equals_from_bloch_definition():
    rng = np.random.default_rng(5)
    done = 0
    while done < 200:
        c = rng.uniform(-1, 1, 3)
        try:
            w = qstate.werner(WernerParams(*c))
        except NotPositive:
            continue
        ref = oracles.pauli_expansion([0] * 3, [0] * 3, np.diag(c))
        assert np.max(np.abs(np.asarray(w) - ref)) <= 1e-14
        done += 1


def test_werner_param_range():
    with pytest.raises(DomainError):
        WernerParams(-1.2, 0, 0)
    with pytest.raises(NotPositive):
        qstate.werner(WernerParams(1, 1, 1))


def test_generic_pure_endpoints():
    np.testing.assert_allclose(np.asarray(qstate.generic_pure(PureFamilyParams(1.0))),
                               np.asarray(qstate.werner(WernerParams(-1, -1, -1))), atol=1e-15)
    v = np.kron(oracles.PLUS, oracles.MINUS)
    np.testing.assert_allclose(np.asarray(qstate.generic_pure(PureFamilyParams(0.0))),
                               np.outer(v, v), atol=1e-15)


@settings(max_examples=100, deadline=None)
@given(st.floats(0.0, 1.0))
def test_generic_pure_is_pure(q):
    rho = qstate.generic_pure(PureFamilyParams(q))
    assert abs(rho.purity() - 1) <= 1e-10
    assert qstate.eigenvalues_hermitian4(rho)[0] == pytest.approx(1.0, abs=1e-10)


def test_pure_params_from_p_keeps_p():
    f = PureFamilyParams.from_p(0.3)
    assert f.p == 0.3
    assert f.p**2 + f.q**2 == pytest.approx(1, abs=1e-12)
    with pytest.raises(DomainError):
        PureFamilyParams(1.1)
    with pytest.raises(DomainError):
        PureFamilyParams(0.5, 0.5)


@pytest.mark.parametrize(
    "state, keep, expected",
    [
        (qstate.singlet, "A", np.eye(2) / 2),
        (lambda: qstate.product_state(0), "B", np.diag([1.0, 0.0])),
        (lambda: qstate.werner(WernerParams(-0.8, -0.8, -0.8)), "A", np.eye(2) / 2),
    ],
)
def test_partial_trace_examples(state, keep, expected):
    np.testing.assert_allclose(qstate.partial_trace(state(), keep), expected, atol=1e-15)


def test_partial_trace_matches_index_loops():
    for rho in random_states(100, seed=11):
        for keep in "AB":
            red = qstate.partial_trace(rho, keep)
            np.testing.assert_allclose(red, oracles.partial_trace_loops(np.asarray(rho), keep), atol=1e-15)
            assert abs(np.trace(red) - 1) <= 1e-12
            assert np.linalg.eigvalsh(red)[0] >= -1e-10


def test_partial_trace_bad_selector(singlet):
    with pytest.raises(DomainError):
        qstate.partial_trace(singlet, "C")


def test_eigenvalues_examples(mixed, singlet):
    np.testing.assert_allclose(qstate.eigenvalues_hermitian4(mixed), [0.25] * 4, atol=1e-14)
    np.testing.assert_allclose(qstate.eigenvalues_hermitian4(singlet), [1, 0, 0, 0], atol=1e-14)
    w = qstate.eigenvalues_hermitian4(qstate.werner(WernerParams(-0.8, -0.8, -0.8)))
    np.testing.assert_allclose(w, [0.85, 0.05, 0.05, 0.05], atol=1e-14)
    # characteristic polynomial oracle: degenerate roots are only good to ~1e-6
    np.testing.assert_allclose(oracles.charpoly_eigenvalues(np.asarray(qstate.werner(WernerParams(-0.8, -0.8, -0.8)))),
                               [0.85, 0.05, 0.05, 0.05], atol=1e-5)


def test_eigenvalues_reject_non_hermitian():
    m = np.eye(4) / 4
    m[0, 1] = 0.1
    with pytest.raises(NotHermitian):
        qstate.eigenvalues_hermitian4(m)


def test_density_matrix_validation():
    with pytest.raises(InvalidState):
        qstate.DensityMatrix4(np.eye(4))
    with pytest.raises(InvalidState):
        qstate.DensityMatrix4(np.eye(3) / 3)
    bad = np.diag([0.5, 0.5, 0.5, -0.5])
    with pytest.raises(NotPositive):
        qstate.DensityMatrix4(bad)


def test_density_matrix_is_immutable(singlet):
    with pytest.raises(ValueError):
        singlet.entries[0, 0] = 1.0


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_jacobi_agrees_with_lapack(seed):
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    h = g + g.conj().T
    w, v = jacobi_eigh(h)
    np.testing.assert_allclose(w, np.linalg.eigvalsh(h)[::-1], atol=1e-12)
    np.testing.assert_allclose(v @ np.diag(w) @ v.conj().T, h, atol=1e-12)
    np.testing.assert_allclose(v.conj().T @ v, np.eye(4), atol=1e-12)
    assert np.sum(w) == pytest.approx(np.trace(h).real, abs=1e-10)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_random_states_are_valid(seed):
    rho = qstate.random_state(np.random.default_rng(seed))
    assert qstate.eigenvalues_hermitian4(rho)[-1] >= -1e-10
    assert abs(np.trace(np.asarray(rho)) - 1) <= 1e-10
