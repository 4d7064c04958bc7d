import math

import numpy as np
import pytest

import config
from network import build_qft, read_output, run
from periodicity import (PeriodicStateSpec, analytic_probability, make_periodic_state,
                         peak_targets, quality_factor, simulate, spectrum, spectrum_to_frame,
                         state_quality, transform_table)
from statevector import RegisterSize
from utils import DomainError


def _spec(L, r, l):
    return PeriodicStateSpec(RegisterSize(L), r, l)


def test_periodic_state_nine_qubits():
    state = make_periodic_state(_spec(9, 10, 8))
    nonzero = np.flatnonzero(state.amplitudes)
    assert nonzero.tolist() == list(range(8, 512, 10))
    assert len(nonzero) == 51
    np.testing.assert_allclose(state.amplitudes[nonzero], 1 / math.sqrt(51), atol=1e-15)


def test_period_one_is_uniform():
    state = make_periodic_state(_spec(3, 1, 0))
    np.testing.assert_allclose(state.amplitudes, np.full(8, 1 / math.sqrt(8)), atol=1e-15)


def test_full_period_is_basis_state():
    state = make_periodic_state(_spec(4, 16, 5))
    assert np.flatnonzero(state.amplitudes).tolist() == [5]
    assert state.amplitudes[5] == 1


@pytest.mark.parametrize("r, l", [(10, 10), (10, -1), (0, 0), (513, 0)])
def test_invalid_period_or_offset(r, l):
    with pytest.raises(DomainError):
        _spec(9, r, l)


def test_peak_targets_round_to_nearest():
    assert peak_targets(9, 10) == (0, 51, 102, 154, 205, 256, 307, 358, 410, 461)


def test_peak_targets_exact_multiples():
    assert peak_targets(9, 16) == tuple(range(0, 512, 32))
    assert peak_targets(6, 1) == (0,)


def test_third_peak_sits_at_154():
    probs = read_output(simulate(_spec(9, 10, 8), 9))
    window = range(150, 158)
    assert max(window, key=lambda c: probs[c]) == 154


def test_exact_period_gives_unit_quality():
    spec = _spec(9, 16, 3)
    assert state_quality(simulate(spec, 9), spec) == pytest.approx(1.0, abs=1e-9)


@pytest.mark.parametrize("l", [0, 3, 8])
def test_qft_quality_exceeds_bound(l):
    spec = _spec(9, 10, l)
    assert state_quality(simulate(spec, 9), spec) >= 4 / math.pi ** 2


@pytest.mark.parametrize("first, second", [(3, 8), (0, 1), (2, 9)])
def test_spectrum_does_not_depend_on_offset_for_equal_counts(first, second):
    # 2^9 = 51·10 + 2：l ∈ {0, 1} 有 52 個週期點，其餘 51 個
    a, b = _spec(9, 10, first), _spec(9, 10, second)
    assert a.count == b.count
    np.testing.assert_allclose(read_output(simulate(a, 9)), read_output(simulate(b, 9)), atol=1e-10)


def test_spectrum_follows_count_when_offsets_differ():
    longer, shorter = _spec(9, 10, 0), _spec(9, 10, 3)
    assert (longer.count, shorter.count) == (52, 51)
    np.testing.assert_allclose(read_output(simulate(longer, 9)), analytic_probability(longer), atol=1e-10)
    assert not np.allclose(read_output(simulate(longer, 9)), read_output(simulate(shorter, 9)), atol=1e-6)


@pytest.mark.parametrize("L, r, l", [(9, 10, 8), (9, 10, 0), (8, 7, 3), (6, 64, 5), (10, 3, 1)])
def test_analytic_probability_matches_simulation(L, r, l):
    spec = _spec(L, r, l)
    np.testing.assert_allclose(read_output(simulate(spec, L)), analytic_probability(spec), atol=1e-10)


def test_uniform_probabilities_give_target_fraction():
    spec = _spec(9, 10, 8)
    result = quality_factor(spectrum(np.full(512, 1 / 512), spec))
    assert result.Q == pytest.approx(10 / 512, abs=1e-15)
    assert sorted(result.per_peak) == list(peak_targets(9, 10))


def test_spectrum_length_mismatch():
    with pytest.raises(DomainError):
        spectrum(np.full(256, 1 / 256), _spec(9, 10, 8))


def test_spectrum_frame_columns():
    spec = _spec(6, 4, 1)
    probs = read_output(run(build_qft(spec.size), make_periodic_state(spec)))
    df = spectrum_to_frame(spectrum(probs, spec))
    assert list(df.columns) == config.SPECTRUM_COLUMNS
    assert len(df) == 64
    assert df['is_peak_target'].sum() == 4
    assert df['probability'].sum() == pytest.approx(1.0, abs=1e-12)


def test_transform_table_modulus_and_phase():
    spec = _spec(9, 10, 9)
    df = transform_table(simulate(spec, 9), spec)
    assert list(df.columns) == config.TRANSFORM_COLUMNS
    assert (df['abs_amplitude'] ** 2).sum() == pytest.approx(1.0, abs=1e-10)
    assert df['phase'].between(-math.pi, math.pi).all()
    assert df.loc[df['is_peak'], 'c'].tolist() == list(peak_targets(9, 10))
