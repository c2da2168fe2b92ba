import math

from hypothesis import assume, given, settings, strategies as st
import numpy as np
import pytest

from orthoqutrit.core.errors import InvalidInputError
from orthoqutrit.core.evolution import (
    QutritState,
    Spectrum,
    Triad,
    is_orthogonal_at,
    survival_amplitude,
    survival_amplitudes,
    survival_probability,
)

EQUAL = Triad(1 / 3, 1 / 3, 1 / 3)
UNIT = Spectrum(1.0, 1.0)

weights = st.floats(min_value=0.0, max_value=1.0, allow_nan=False, allow_infinity=False)
frequencies = st.floats(min_value=0.05, max_value=20.0, allow_nan=False, allow_infinity=False)
times = st.floats(min_value=0.0, max_value=200.0, allow_nan=False, allow_infinity=False)
short_times = st.floats(min_value=0.0, max_value=20.0, allow_nan=False, allow_infinity=False)


def _triad(a: float, b: float, c: float) -> Triad:
    assume(a + b + c > 1e-3)
    return Triad.normalized(a, b, c)


# ── Spectrum / Triad ─────────────────────────────────────────

def test_spectrum_derived_quantities() -> None:
    spectrum = Spectrum(1.5, 3.0)
    assert spectrum.omega31 == 4.5
    assert spectrum.Omega == 2.0
    assert list(spectrum.energies) == [0.0, 1.5, 4.5]
    assert spectrum.omega(3, 2) == 3.0
    assert spectrum.omega(1, 3) == -4.5


def test_spectrum_from_ratio_and_scaling() -> None:
    spectrum = Spectrum.from_ratio(0.5, omega21=2.0)
    assert spectrum.omega32 == 1.0
    assert spectrum.scaled(2.0) == Spectrum(4.0, 2.0)


@pytest.mark.parametrize("omega21, omega32", [(0.0, 1.0), (1.0, -2.0), (float("nan"), 1.0), (1.0, float("inf"))])
def test_spectrum_rejects_degenerate_levels(omega21: float, omega32: float) -> None:
    with pytest.raises(InvalidInputError):
        Spectrum(omega21, omega32)


def test_spectrum_rejects_bad_level_index() -> None:
    with pytest.raises(InvalidInputError):
        UNIT.omega(4, 1)


def test_triad_rejects_bad_sum_and_negatives() -> None:
    with pytest.raises(InvalidInputError):
        Triad(0.5, 0.5, 0.1)
    with pytest.raises(InvalidInputError):
        Triad(1.2, -0.2, 0.0)


def test_triad_accessors() -> None:
    triad = Triad(0.25, 0.5, 0.25)
    assert tuple(triad) == (0.25, 0.5, 0.25)
    assert triad[2] == 0.5
    assert triad.populated() == (1, 2, 3)
    assert Triad(0.5, 0.0, 0.5).populated() == (1, 3)
    with pytest.raises(InvalidInputError):
        triad[0]


def test_triad_normalized() -> None:
    triad = Triad.normalized(1.0, 1.0, 2.0)
    assert tuple(triad) == (0.25, 0.25, 0.5)
    with pytest.raises(InvalidInputError):
        Triad.normalized(0.0, 0.0, 0.0)


def test_state_phases_reduced_modulo_two_pi() -> None:
    state = QutritState(EQUAL, theta1=7.0, theta2=-1.0, theta3=2 * math.pi)
    assert state.theta1 == pytest.approx(7.0 - 2 * math.pi)
    assert state.theta2 == pytest.approx(2 * math.pi - 1.0)
    assert state.theta3 == 0.0
    assert np.sum(np.abs(state.amplitudes()) ** 2) == pytest.approx(1.0)


# ── Survival amplitude ───────────────────────────────────────

def test_stationary_state_keeps_unit_overlap() -> None:
    assert abs(survival_amplitude(Triad(1.0, 0.0, 0.0), Spectrum(1.3, 0.7), 7.3)) == 1.0
    assert survival_probability(Triad(1.0, 0.0, 0.0), UNIT, 5.0) == 1.0


def test_qubit_orthogonal_at_half_period() -> None:
    triad = Triad(0.5, 0.5, 0.0)
    assert abs(survival_amplitude(triad, UNIT, math.pi)) < 1e-15
    assert survival_probability(triad, UNIT, math.pi) < 1e-30


def test_equal_weight_orthogonal_at_two_thirds_pi() -> None:
    assert abs(survival_amplitude(EQUAL, UNIT, 2 * math.pi / 3)) < 1e-12


def test_equal_weight_probability_at_third_pi() -> None:
    # |1 + e^{-iπ/3} + e^{-2iπ/3}|² / 9 = |1 - i√3|² / 9
    assert survival_probability(EQUAL, UNIT, math.pi / 3) == pytest.approx(4 / 9, abs=1e-12)


def test_is_orthogonal_at() -> None:
    assert is_orthogonal_at(Triad(0.5, 0.0, 0.5), UNIT, math.pi / 2)
    assert not is_orthogonal_at(Triad(1.0, 0.0, 0.0), UNIT, 1.234)
    assert is_orthogonal_at(Triad(0.44784, 0.26973, 0.28243), Spectrum(1.0, 0.5), 2.5, tol=1e-4)


def test_is_orthogonal_at_rejects_bad_tolerance() -> None:
    with pytest.raises(InvalidInputError):
        is_orthogonal_at(EQUAL, UNIT, 1.0, tol=0.0)


def test_negative_time_rejected() -> None:
    with pytest.raises(InvalidInputError):
        survival_amplitude(EQUAL, UNIT, -1.0)
    with pytest.raises(InvalidInputError):
        survival_amplitudes(EQUAL, UNIT, np.array([0.0, -1.0]))


def test_vectorised_amplitude_matches_scalar() -> None:
    spectrum = Spectrum(1.1, 2.7)
    ts = np.linspace(0.0, 10.0, 57)
    vector = survival_amplitudes(EQUAL, spectrum, ts)
    for t, value in zip(ts, vector):
        assert abs(value - survival_amplitude(EQUAL, spectrum, float(t))) < 1e-14


def test_rational_ratio_recurrence() -> None:
    # Ω = 3/2: period 2π·2/ω21
    spectrum = Spectrum.from_ratio(1.5, omega21=1.3)
    period = 2 * math.pi * 2 / 1.3
    triad = Triad(0.2, 0.3, 0.5)
    for t in (0.1, 0.77, 2.5, 9.0):
        assert survival_probability(triad, spectrum, t) == pytest.approx(
            survival_probability(triad, spectrum, t + period), abs=1e-9
        )


# ── Properties ───────────────────────────────────────────────

@given(weights, weights, weights, frequencies, frequencies, times,
       st.floats(min_value=-10.0, max_value=10.0), st.floats(min_value=-10.0, max_value=10.0))
@settings(max_examples=300)
def test_phases_never_enter(a: float, b: float, c: float, w21: float, w32: float, t: float,
                            theta2: float, theta3: float) -> None:
    triad = _triad(a, b, c)
    spectrum = Spectrum(w21, w32)
    plain = QutritState(triad).survival_amplitude(spectrum, t)
    phased = QutritState(triad, 0.3, theta2, theta3).survival_amplitude(spectrum, t)
    assert plain == phased


@given(weights, weights, weights, frequencies, frequencies, short_times,
       st.floats(min_value=-10.0, max_value=10.0, allow_nan=False))
@settings(max_examples=300)
def test_energy_shift_only_changes_global_phase(a: float, b: float, c: float, w21: float, w32: float,
                                                t: float, shift: float) -> None:
    triad = _triad(a, b, c)
    spectrum = Spectrum(w21, w32)
    shifted = complex(np.dot(triad.as_array(), np.exp(-1j * (spectrum.energies + shift) * t)))
    assert abs(shifted) ** 2 == pytest.approx(survival_probability(triad, spectrum, t), abs=1e-12)


@given(weights, weights, weights, frequencies, frequencies, times)
@settings(max_examples=300)
def test_amplitude_bounded_and_unit_at_zero(a: float, b: float, c: float, w21: float, w32: float,
                                            t: float) -> None:
    triad = _triad(a, b, c)
    spectrum = Spectrum(w21, w32)
    assert abs(survival_amplitude(triad, spectrum, t)) <= 1.0 + 1e-12
    assert abs(survival_amplitude(triad, spectrum, 0.0)) == pytest.approx(1.0, abs=1e-14)
    assert 0.0 <= survival_probability(triad, spectrum, t) <= 1.0
