import numpy as np
import pytest
from scipy.stats import unitary_group

from statevector import (HADAMARD, IDENTITY, RegisterSize, StateVector, apply_controlled_phase,
                         apply_diagonal_phase, apply_single_qubit, from_amplitudes,
                         new_basis_state, probabilities, random_state)
from utils import DomainError


def test_basis_state_single_qubit():
    state = new_basis_state(RegisterSize(1), 0)
    np.testing.assert_array_equal(state.amplitudes, [1, 0])


def test_basis_state_little_endian():
    # 6 = |1⟩⊗|1⟩⊗|0⟩
    state = new_basis_state(RegisterSize(3), 6)
    assert np.flatnonzero(state.amplitudes).tolist() == [6]
    assert state.amplitudes[6] == 1


def test_basis_state_out_of_range():
    with pytest.raises(DomainError):
        new_basis_state(RegisterSize(2), 4)


@pytest.mark.parametrize("L", [0, -1, 25])
def test_register_size_limits(L):
    with pytest.raises(DomainError):
        RegisterSize(L)


def test_identity_leaves_state_unchanged():
    state = random_state(RegisterSize(4), np.random.default_rng(1))
    out = apply_single_qubit(state, 2, IDENTITY)
    np.testing.assert_allclose(out.amplitudes, state.amplitudes, atol=1e-15)


def test_hadamard_on_zero():
    out = apply_single_qubit(new_basis_state(RegisterSize(1), 0), 0, HADAMARD)
    np.testing.assert_allclose(out.amplitudes, [1 / np.sqrt(2), 1 / np.sqrt(2)], atol=1e-15)


def test_hadamard_targets_requested_qubit():
    out = apply_single_qubit(new_basis_state(RegisterSize(3), 0), 2, HADAMARD)
    assert np.flatnonzero(np.abs(out.amplitudes) > 1e-12).tolist() == [0, 4]


def test_hadamard_is_involution():
    state = random_state(RegisterSize(4), np.random.default_rng(7))
    out = state
    for qubit in range(4):
        out = apply_single_qubit(apply_single_qubit(out, qubit, HADAMARD), qubit, HADAMARD)
    np.testing.assert_allclose(out.amplitudes, state.amplitudes, atol=1e-12)


def test_single_qubit_rejects_bad_qubit_and_matrix():
    state = new_basis_state(RegisterSize(2), 0)
    with pytest.raises(DomainError):
        apply_single_qubit(state, 2, HADAMARD)
    with pytest.raises(DomainError):
        apply_single_qubit(state, 0, np.array([[1, 1], [0, 1]]))


def test_operations_copy_unless_inplace():
    state = new_basis_state(RegisterSize(2), 0)
    apply_single_qubit(state, 0, HADAMARD)
    assert state.amplitudes[0] == 1
    apply_single_qubit(state, 0, HADAMARD, inplace=True)
    assert state.amplitudes[0] == pytest.approx(1 / np.sqrt(2))


def test_controlled_phase_pi_on_uniform_state():
    uniform = StateVector(RegisterSize(2), np.full(4, 0.5))
    out = apply_controlled_phase(uniform, 0, 1, np.pi)
    np.testing.assert_allclose(out.amplitudes, [0.5, 0.5, 0.5, -0.5], atol=1e-15)


def test_controlled_phase_zero_angle_is_identity():
    state = random_state(RegisterSize(3), np.random.default_rng(3))
    out = apply_controlled_phase(state, 0, 2, 0.0)
    np.testing.assert_array_equal(out.amplitudes, state.amplitudes)


def test_controlled_phase_is_symmetric_in_qubits():
    state = random_state(RegisterSize(3), np.random.default_rng(5))
    a = apply_controlled_phase(state, 0, 2, 0.7)
    b = apply_controlled_phase(state, 2, 0, 0.7)
    np.testing.assert_array_equal(a.amplitudes, b.amplitudes)


def test_controlled_phase_rejects_equal_qubits():
    with pytest.raises(DomainError):
        apply_controlled_phase(new_basis_state(RegisterSize(2), 0), 1, 1, np.pi)


def test_diagonal_phase_keeps_probabilities():
    state = random_state(RegisterSize(3), np.random.default_rng(11))
    out = apply_diagonal_phase(state, 1, -0.4, 0.4)
    np.testing.assert_allclose(probabilities(out), probabilities(state), atol=1e-15)


def test_probabilities_of_basis_state():
    probs = probabilities(new_basis_state(RegisterSize(3), 5))
    expected = np.zeros(8)
    expected[5] = 1
    np.testing.assert_array_equal(probs, expected)


def test_probabilities_of_uniform_state():
    state = StateVector(RegisterSize(3), np.full(8, 1 / np.sqrt(8)))
    np.testing.assert_allclose(probabilities(state), np.full(8, 0.125), atol=1e-15)


def test_gates_preserve_norm():
    state = random_state(RegisterSize(5), np.random.default_rng(2))
    for qubit in range(5):
        state = apply_single_qubit(state, qubit, HADAMARD)
        state = apply_controlled_phase(state, qubit, (qubit + 1) % 5, np.pi / 3)
    assert state.norm_deviation() < 1e-10


def test_from_amplitudes():
    state = from_amplitudes([1, 1, 1, 1], normalize=True)
    assert state.L == 2
    assert state.norm_deviation() < 1e-12
    with pytest.raises(DomainError):
        from_amplitudes([1, 0, 0])
    with pytest.raises(DomainError):
        from_amplitudes([0, 0], normalize=True)


def test_amplitude_length_mismatch():
    with pytest.raises(DomainError):
        StateVector(RegisterSize(2), np.zeros(8))


@pytest.mark.parametrize("L", [3, 5])
def test_long_gate_sequences_preserve_norm(L):
    rng = np.random.default_rng(L)
    state = random_state(RegisterSize(L), rng)
    for _ in range(10 * L ** 2):
        kind = rng.integers(3)
        if kind == 0:
            state = apply_single_qubit(state, int(rng.integers(L)), unitary_group.rvs(2, random_state=rng))
        elif kind == 1:
            j, k = rng.choice(L, size=2, replace=False)
            state = apply_controlled_phase(state, int(j), int(k), rng.uniform(-np.pi, np.pi))
        else:
            phi = rng.normal()
            state = apply_diagonal_phase(state, int(rng.integers(L)), -phi, phi)
    assert abs(np.sum(probabilities(state)) - 1) < 1e-10


def _marginal_without(probs, qubit):
    """對 qubit 求和後其餘位元的分佈"""
    return probs.reshape(-1, 2, 1 << qubit).sum(axis=1)


@pytest.mark.parametrize("qubit", [0, 2, 3])
def test_diagonal_gate_is_local(qubit):
    state = random_state(RegisterSize(4), np.random.default_rng(21))
    u = np.diag(np.exp([0.7j, -1.3j]))
    out = apply_single_qubit(state, qubit, u)
    np.testing.assert_allclose(np.abs(out.amplitudes), np.abs(state.amplitudes), atol=1e-14)
    np.testing.assert_allclose(_marginal_without(probabilities(out), qubit),
                               _marginal_without(probabilities(state), qubit), atol=1e-14)


@pytest.mark.parametrize("qubit", [0, 2, 3])
def test_hadamard_keeps_other_qubits_distribution(qubit):
    state = random_state(RegisterSize(4), np.random.default_rng(22))
    out = apply_single_qubit(state, qubit, HADAMARD)
    np.testing.assert_allclose(_marginal_without(probabilities(out), qubit),
                               _marginal_without(probabilities(state), qubit), atol=1e-14)
