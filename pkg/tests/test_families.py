from dataclasses import fields
import math

import numpy as np
import pytest

from orthoqutrit.core.errors import (
    BoundaryCaseError,
    DegenerateInputError,
    InvalidInputError,
    OutOfDomainError,
)
from orthoqutrit.core.evolution import Spectrum, Triad, is_orthogonal_at, survival_amplitude
from orthoqutrit.core.families import (
    FamilyKind,
    FamilyLabel,
    ParityCase,
    RationalRelation,
    classify_triad,
    detect_rational_relation,
    equal_weight_times,
    equally_spaced_triad,
    family1_qubit_times,
    family1b_solutions,
    family2_components,
    family2_triad,
    ib_template_triad,
    qubit_triad,
    resolve_boundary,
)
from orthoqutrit.core.regions import stripes_at

UNIT = Spectrum(1.0, 1.0)


# ── classify_triad ───────────────────────────────────────────

@pytest.mark.parametrize(
    "triad, kind, index",
    [
        ((0.5, 0.0, 0.5), FamilyKind.I_QUBIT, 2),
        ((0.5, 0.5, 0.0), FamilyKind.I_QUBIT, 3),
        ((0.0, 0.5, 0.5), FamilyKind.I_QUBIT, 1),
        ((0.3, 0.5, 0.2), FamilyKind.I_B, 2),
        ((0.5, 0.1, 0.4), FamilyKind.I_B, 1),
        ((0.2, 0.3, 0.5), FamilyKind.I_B, 3),
        ((0.4, 0.35, 0.25), FamilyKind.II, None),
        ((0.7, 0.2, 0.1), FamilyKind.NOT_CLASSIFIED, None),
        ((0.6, 0.4, 0.0), FamilyKind.NOT_CLASSIFIED, None),
        ((1.0, 0.0, 0.0), FamilyKind.STATIONARY, 1),
        ((0.0, 0.0, 1.0), FamilyKind.STATIONARY, 3),
    ],
)
def test_classify_triad(triad: tuple, kind: FamilyKind, index: int | None) -> None:
    label = classify_triad(Triad(*triad))
    assert label.kind is kind
    assert label.index == index


def test_equal_weight_is_family_ii() -> None:
    assert classify_triad(Triad(1 / 3, 1 / 3, 1 / 3)).kind is FamilyKind.II


def test_label_text_and_qubit_pair() -> None:
    label = classify_triad(Triad(0.5, 0.0, 0.5))
    assert str(label) == "I-qubit(r2=0)"
    assert label.qubit_pair == (3, 1)
    assert label.can_reach_orthogonality
    assert str(FamilyLabel(FamilyKind.I_B, 2)) == "I-b(r2=1/2)"
    assert str(FamilyLabel(FamilyKind.NOT_CLASSIFIED)) == "not-classified"
    assert not FamilyLabel(FamilyKind.STATIONARY, 1).can_reach_orthogonality
    assert FamilyLabel(FamilyKind.II).qubit_pair is None


def test_classify_is_total_on_random_triads() -> None:
    rng = np.random.default_rng(11)
    for weights in rng.dirichlet((0.5, 0.5, 0.5), size=500):
        label = classify_triad(Triad.normalized(*weights))
        assert label.kind in set(FamilyKind)
        assert classify_triad(Triad.normalized(*weights)) == label


# ── Family I-qubit ───────────────────────────────────────────

def test_qubit_times_lower_pair() -> None:
    result = family1_qubit_times((2, 1), UNIT, 3)
    assert result.pair == (2, 1)
    assert result.count == 3
    assert result.times == pytest.approx((math.pi, 3 * math.pi, 5 * math.pi))


def test_qubit_times_fastest_pair() -> None:
    assert family1_qubit_times((3, 1), UNIT, 1).times == pytest.approx((math.pi / 2,))


def test_qubit_times_upper_pair() -> None:
    times = family1_qubit_times((3, 2), Spectrum(1.0, 2.0), 2).times
    assert times == pytest.approx((math.pi / 2, 3 * math.pi / 2))


def test_qubit_times_are_orthogonal() -> None:
    spectrum = Spectrum(0.7, 1.9)
    for pair in ((2, 1), (3, 1), (3, 2)):
        result = family1_qubit_times(pair, spectrum, 4)
        assert list(result.times) == sorted(result.times)
        for t in result.times:
            assert is_orthogonal_at(qubit_triad(pair), spectrum, t)


def test_qubit_times_reject_bad_input() -> None:
    with pytest.raises(InvalidInputError):
        family1_qubit_times((1, 2), UNIT, 1)
    with pytest.raises(InvalidInputError):
        family1_qubit_times((2, 1), UNIT, 0)


# ── Rational relation / Family I-b ───────────────────────────

@pytest.mark.parametrize(
    "Omega, m, n, case",
    [
        (2.0, 2, 1, ParityCase.N_ODD_M_EVEN),
        (1.0, 1, 1, ParityCase.N_ODD_M_ODD),
        (0.5, 1, 2, ParityCase.N_EVEN_M_ODD),
        (2.0 / 3.0, 2, 3, ParityCase.N_ODD_M_EVEN),
    ],
)
def test_detect_rational_relation(Omega: float, m: int, n: int, case: ParityCase) -> None:
    relation = detect_rational_relation(Spectrum.from_ratio(Omega))
    assert relation is not None
    assert (relation.m, relation.n) == (m, n)
    assert relation.parity_case is case


def test_detect_rational_relation_irrational() -> None:
    spectrum = Spectrum.from_ratio(math.sqrt(2.0))
    assert detect_rational_relation(spectrum, max_denominator=10, tol=1e-6) is None
    with pytest.raises(InvalidInputError):
        detect_rational_relation(spectrum, max_denominator=0)


def test_relation_requires_coprime_integers() -> None:
    with pytest.raises(InvalidInputError):
        RationalRelation(2, 4, ParityCase.N_EVEN_M_ODD)


@pytest.mark.parametrize(
    "Omega, template, pinned, tau",
    [
        (2.0, "{1/2, r, 1/2-r}", 1, math.pi),
        (0.5, "{r, 1/2-r, 1/2}", 3, 2 * math.pi),
        (1.0, "{r, 1/2, 1/2-r}", 2, math.pi),
    ],
)
def test_family1b_solutions(Omega: float, template: str, pinned: int, tau: float) -> None:
    spectrum = Spectrum.from_ratio(Omega)
    solution = family1b_solutions(detect_rational_relation(spectrum), spectrum)
    assert solution.template == template
    assert solution.pinned_index == pinned
    assert solution.tau == pytest.approx(tau)
    for r in (0.05, 0.2, 0.45):
        triad = solution.triad(r)
        assert classify_triad(triad) == FamilyLabel(FamilyKind.I_B, pinned)
        for t in solution.times(3):
            assert is_orthogonal_at(triad, spectrum, t)


def test_family1b_times_are_odd_multiples() -> None:
    spectrum = Spectrum.from_ratio(1.0, omega21=2.0)
    solution = family1b_solutions(detect_rational_relation(spectrum), spectrum)
    assert solution.times(3) == pytest.approx((math.pi / 2, 3 * math.pi / 2, 5 * math.pi / 2))
    with pytest.raises(InvalidInputError):
        solution.times(0)


def test_family1b_solution_fields() -> None:
    spectrum = Spectrum(1.5, 3.0)
    solution = family1b_solutions(detect_rational_relation(spectrum), spectrum)
    assert [f.name for f in fields(solution)] == ["relation", "pinned_index", "tau"]
    assert [f.name for f in fields(solution.relation)] == ["m", "n", "parity_case"]
    assert solution.tau == pytest.approx(math.pi / 1.5)


def test_ib_template_domain() -> None:
    assert tuple(ib_template_triad(3, 0.1)) == pytest.approx((0.1, 0.4, 0.5))
    with pytest.raises(OutOfDomainError):
        ib_template_triad(2, 0.5)
    with pytest.raises(OutOfDomainError):
        ib_template_triad(2, 0.0)
    with pytest.raises(InvalidInputError):
        ib_template_triad(4, 0.2)


# ── Family II ────────────────────────────────────────────────

def test_family2_equal_weight() -> None:
    triad = family2_triad(UNIT, 2 * math.pi / 3)
    assert tuple(triad) == pytest.approx((1 / 3, 1 / 3, 1 / 3), abs=1e-12)


def test_family2_generic_point() -> None:
    spectrum = Spectrum(1.0, 0.5)
    triad = family2_triad(spectrum, 2.5)
    assert tuple(triad) == pytest.approx((0.44784, 0.26973, 0.28243), abs=1e-5)
    assert math.fsum(triad) == pytest.approx(1.0, abs=1e-12)
    assert abs(survival_amplitude(triad, spectrum, 2.5)) < 1e-12


def test_family2_below_stripe_has_no_solution() -> None:
    assert family2_triad(UNIT, 0.1) is None


def test_family2_boundary_angle() -> None:
    with pytest.raises(BoundaryCaseError) as excinfo:
        family2_triad(UNIT, math.pi)
    assert (2, 1) in excinfo.value.pairs
    assert (3, 2) in excinfo.value.pairs


def test_family2_rejects_non_positive_tau() -> None:
    with pytest.raises(InvalidInputError):
        family2_triad(UNIT, 0.0)


@pytest.mark.parametrize("Omega", [1.0, 2.0, 0.4])
def test_family2_approaches_red_border(Omega: float) -> None:
    spectrum = Spectrum.from_ratio(Omega)
    lower = math.pi / (1.0 + Omega)
    r2 = [family2_triad(spectrum, lower + delta).r2 for delta in (1e-1, 1e-2, 1e-3, 1e-4, 1e-5)]
    assert all(a > b > 0.0 for a, b in zip(r2, r2[1:]))
    assert r2[-1] < 1e-3


def test_family2_components_match_scalar_solver() -> None:
    xs = np.array([0.5, 1.0, 2.0, 2.5, 3.0])
    for Omega in (0.3, 1.0, 2.7):
        parts = family2_components(xs, Omega)
        spectrum = Spectrum.from_ratio(Omega)
        for k, x in enumerate(xs):
            triad = family2_triad(spectrum, float(x))
            assert bool(parts["valid"][k]) == (triad is not None)
            if triad is not None:
                assert (parts["r1"][k], parts["r2"][k], parts["r3"][k]) == pytest.approx(tuple(triad), abs=1e-14)


def test_family2_grid_is_orthogonal() -> None:
    """Every valid Family-II grid point is an orthogonal state at its τ."""
    xs, omegas = np.meshgrid(np.linspace(0.01, math.pi, 300), np.linspace(0.02, 6.0, 300))
    parts = family2_components(xs, omegas)
    valid = parts["valid"]
    assert valid.any()
    r = np.stack([parts["r1"], parts["r2"], parts["r3"]], axis=-1)[valid]
    x, w = xs[valid], omegas[valid]
    amplitude = r[:, 0] + r[:, 1] * np.exp(-1j * x) + r[:, 2] * np.exp(-1j * (1.0 + w) * x)
    assert np.abs(amplitude).max() < 1e-10
    assert np.abs(r.sum(axis=-1) - 1.0).max() < 1e-12


def test_not_classified_triads_never_reach_orthogonality() -> None:
    rng = np.random.default_rng(5)
    spectrum = Spectrum(1.0, 1.7)
    ts = np.arange(1, int(50 / (math.pi / (100 * spectrum.omega31)))) * math.pi / (100 * spectrum.omega31)
    checked = 0
    for weights in rng.dirichlet((1.0, 1.0, 1.0), size=60):
        triad = Triad.normalized(*weights)
        if classify_triad(triad).kind is not FamilyKind.NOT_CLASSIFIED or max(triad) < 0.51:
            continue
        amplitude = triad.r1 + triad.r2 * np.exp(-1j * ts) + triad.r3 * np.exp(-1j * spectrum.omega31 * ts)
        assert np.abs(amplitude).min() > 0.01
        checked += 1
    assert checked > 10


# ── Equally spaced spectrum ──────────────────────────────────

def test_equally_spaced_triad() -> None:
    assert tuple(equally_spaced_triad(1.0, 2 * math.pi / 3)) == pytest.approx((1 / 3, 1 / 3, 1 / 3))
    assert tuple(equally_spaced_triad(1.0, math.pi)) == pytest.approx((0.25, 0.5, 0.25))
    assert equally_spaced_triad(1.0, 0.3) is None


def test_equally_spaced_boundary_point_is_ib() -> None:
    triad = equally_spaced_triad(1.0, math.pi)
    assert classify_triad(triad) == FamilyLabel(FamilyKind.I_B, 2)


def test_equally_spaced_degenerate() -> None:
    with pytest.raises(DegenerateInputError):
        equally_spaced_triad(1.0, 2 * math.pi)


@pytest.mark.parametrize("omega, tau", [(1.0, 1.8), (1.0, 2.5), (2.0, 1.1), (0.5, 5.0)])
def test_equally_spaced_agrees_with_family2(omega: float, tau: float) -> None:
    a = equally_spaced_triad(omega, tau)
    b = family2_triad(Spectrum(omega, omega), tau)
    assert tuple(a) == pytest.approx(tuple(b), abs=1e-12)


def test_equal_weight_times() -> None:
    times = equal_weight_times(1.0, 4)
    assert times == pytest.approx((2 * math.pi / 3, 4 * math.pi / 3, 8 * math.pi / 3, 10 * math.pi / 3))
    for t in times:
        assert is_orthogonal_at(Triad(1 / 3, 1 / 3, 1 / 3), UNIT, t)
    with pytest.raises(InvalidInputError):
        equal_weight_times(1.0, 0)


# ── Boundary resolution ──────────────────────────────────────

def test_resolve_boundary_equal_spacing_at_pi() -> None:
    found = resolve_boundary(UNIT, math.pi)
    assert found.qubits == ((2, 1), (3, 2))
    assert found.ib is not None
    assert found.ib.pinned_index == 2
    assert found.ib.tau == pytest.approx(math.pi)


def test_resolve_boundary_with_wider_angle_band() -> None:
    assert resolve_boundary(UNIT, 3.14159265).empty
    found = resolve_boundary(UNIT, 3.14159265, angle_tol=1e-6)
    assert found.ib is not None and found.ib.pinned_index == 2


def test_resolve_boundary_odd_multiple_keeps_base_time() -> None:
    found = resolve_boundary(UNIT, 3 * math.pi)
    assert found.ib.relation.m == 1 and found.ib.relation.n == 1
    assert found.ib.tau == pytest.approx(math.pi)


def test_resolve_boundary_fastest_qubit_only() -> None:
    found = resolve_boundary(UNIT, math.pi / 2)
    assert found.qubits == ((3, 1),)
    assert found.ib is None


def test_resolve_boundary_off_boundary() -> None:
    assert resolve_boundary(UNIT, 2.0).empty
    with pytest.raises(InvalidInputError):
        resolve_boundary(UNIT, -1.0)


def test_stripe_points_feed_family2() -> None:
    spectrum = Spectrum.from_ratio(4.5)
    for stripe in stripes_at(4.5):
        middle = 0.5 * (stripe.lower + stripe.upper)
        assert family2_triad(spectrum, middle) is not None
