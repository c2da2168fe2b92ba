"""Closed-form solutions of the orthogonality condition Σ r_i e^{−iE_iτ} = 0.

Three families cover every triad that reaches an orthogonal state:

- I-qubit: one empty level, the other two at 1/2; τ = nπ/ω_ij, n odd.
- I-b: one level pinned at 1/2, the other two sharing the remaining 1/2;
  only for rational Ω = m/n, τ = nπ/ω21, with the pinned level fixed by the
  parities of n and m.
- II: every r_i strictly inside (0, 1/2), r_i = sin(ω_jk τ)/D for (i, j, k)
  cyclic and D = sin ω31τ + sin ω12τ + sin ω23τ.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
import logging
import math

import numpy as np

from orthoqutrit.core.errors import (
    BoundaryCaseError,
    DegenerateInputError,
    InvalidInputError,
    OutOfDomainError,
)
from orthoqutrit.core.evolution import PAIRS, TWO_PI, Spectrum, Triad

logger = logging.getLogger("orthoqutrit.families")

ANGLE_TOL = 1e-9
DENOMINATOR_TOL = 1e-9
CLASSIFY_TOL = 1e-9
DEFAULT_MAX_DENOMINATOR = 64
RATIONAL_TOL = 1e-9


# ── Labels ───────────────────────────────────────────────────


class FamilyKind(str, Enum):
    I_QUBIT = "I-qubit"
    I_B = "I-b"
    II = "II"
    STATIONARY = "stationary"
    NOT_CLASSIFIED = "not-classified"


@dataclass(frozen=True)
class FamilyLabel:
    """Family of a triad.

    ``index`` is the empty level for I_QUBIT, the level pinned at 1/2 for
    I_B and the fully populated level for STATIONARY; ``None`` otherwise.
    """

    kind: FamilyKind
    index: int | None = None

    @property
    def can_reach_orthogonality(self) -> bool:
        return self.kind in (FamilyKind.I_QUBIT, FamilyKind.I_B, FamilyKind.II)

    @property
    def qubit_pair(self) -> tuple[int, int] | None:
        if self.kind is not FamilyKind.I_QUBIT or self.index is None:
            return None
        i, j = sorted({1, 2, 3} - {self.index}, reverse=True)
        return (i, j)

    def __str__(self) -> str:
        if self.kind is FamilyKind.I_QUBIT:
            return f"{self.kind.value}(r{self.index}=0)"
        if self.kind is FamilyKind.I_B:
            return f"{self.kind.value}(r{self.index}=1/2)"
        if self.kind is FamilyKind.STATIONARY:
            return f"{self.kind.value}(r{self.index}=1)"
        return self.kind.value


def classify_triad(triad: Triad, tol: float = CLASSIFY_TOL) -> FamilyLabel:
    """Map a triad to its unique family label (total and deterministic)."""
    r = tuple(triad)
    for i, value in enumerate(r, start=1):
        if value >= 1.0 - tol:
            return FamilyLabel(FamilyKind.STATIONARY, i)

    zeros = [i for i, value in enumerate(r, start=1) if value <= tol]
    halves = [i for i, value in enumerate(r, start=1) if abs(value - 0.5) <= tol]

    if len(zeros) == 1:
        if len(halves) == 2:
            return FamilyLabel(FamilyKind.I_QUBIT, zeros[0])
        # the two populated levels are unequal, so one of them exceeds 1/2
        return FamilyLabel(FamilyKind.NOT_CLASSIFIED)
    if len(halves) == 1:
        return FamilyLabel(FamilyKind.I_B, halves[0])
    if all(tol < value < 0.5 - tol for value in r):
        return FamilyLabel(FamilyKind.II)
    return FamilyLabel(FamilyKind.NOT_CLASSIFIED)


# ── Family I-qubit ───────────────────────────────────────────


def _check_pair(pair: tuple[int, int]) -> tuple[int, int]:
    pair = (int(pair[0]), int(pair[1]))
    if pair not in PAIRS:
        raise InvalidInputError(f"pair must be one of {PAIRS} (i > j), got {pair}")
    return pair


def qubit_triad(pair: tuple[int, int]) -> Triad:
    """Equal-weight superposition of levels i and j."""
    i, j = _check_pair(pair)
    r = [0.0, 0.0, 0.0]
    r[i - 1] = r[j - 1] = 0.5
    return Triad(*r)


@dataclass(frozen=True)
class FamilyITimes:
    pair: tuple[int, int]
    times: tuple[float, ...]
    count: int


def family1_qubit_times(pair: tuple[int, int], spectrum: Spectrum, count: int) -> FamilyITimes:
    """First ``count`` orthogonality times nπ/ω_ij (n odd) of the (i, j) qubit."""
    i, j = _check_pair(pair)
    if count < 1:
        raise InvalidInputError(f"count must be >= 1, got {count}")
    omega = spectrum.omega(i, j)
    times = tuple((2 * k + 1) * math.pi / omega for k in range(count))
    return FamilyITimes(pair=(i, j), times=times, count=count)


# ── Family I-b ───────────────────────────────────────────────


class ParityCase(str, Enum):
    N_ODD_M_EVEN = "n odd, m even"
    N_EVEN_M_ODD = "n even, m odd"
    N_ODD_M_ODD = "n odd, m odd"

    @property
    def pinned_index(self) -> int:
        return _PINNED_INDEX[self]

    @classmethod
    def of(cls, m: int, n: int) -> "ParityCase":
        assert not (m % 2 == 0 and n % 2 == 0), "m and n cannot both be even"
        if n % 2 == 1:
            return cls.N_ODD_M_EVEN if m % 2 == 0 else cls.N_ODD_M_ODD
        return cls.N_EVEN_M_ODD


_PINNED_INDEX = {
    ParityCase.N_ODD_M_EVEN: 1,
    ParityCase.N_EVEN_M_ODD: 3,
    ParityCase.N_ODD_M_ODD: 2,
}


@dataclass(frozen=True)
class RationalRelation:
    """ω32/ω21 = m/n with gcd(m, n) = 1."""

    m: int
    n: int
    parity_case: ParityCase

    def __post_init__(self) -> None:
        if self.m < 1 or self.n < 1 or math.gcd(self.m, self.n) != 1:
            raise InvalidInputError(f"m/n must be positive and coprime, got {self.m}/{self.n}")


def detect_rational_relation(
    spectrum: Spectrum,
    max_denominator: int = DEFAULT_MAX_DENOMINATOR,
    tol: float = RATIONAL_TOL,
) -> RationalRelation | None:
    """Best continued-fraction approximation of Ω with denominator <= max_denominator."""
    if max_denominator < 1:
        raise InvalidInputError(f"max_denominator must be >= 1, got {max_denominator}")
    Omega = spectrum.Omega
    approx = Fraction(Omega).limit_denominator(max_denominator)
    if approx.numerator < 1 or abs(Omega - approx.numerator / approx.denominator) >= tol:
        logger.debug("No rational relation for Omega=%r within tol=%g (best %s)", Omega, tol, approx)
        return None
    m, n = approx.numerator, approx.denominator
    return RationalRelation(m=m, n=n, parity_case=ParityCase.of(m, n))


def ib_template_triad(pinned_index: int, r: float) -> Triad:
    """Edge triad of the orthogonality simplex with r_pinned = 1/2.

    pinned 1 → {1/2, r, 1/2 − r}; pinned 2 → {r, 1/2, 1/2 − r};
    pinned 3 → {r, 1/2 − r, 1/2}; with 0 < r < 1/2.
    """
    if not 0.0 < r < 0.5:
        raise OutOfDomainError(f"free parameter r must lie in (0, 1/2), got {r!r}")
    if pinned_index == 1:
        return Triad(0.5, r, 0.5 - r)
    if pinned_index == 2:
        return Triad(r, 0.5, 0.5 - r)
    if pinned_index == 3:
        return Triad(r, 0.5 - r, 0.5)
    raise InvalidInputError(f"pinned index must be 1..3, got {pinned_index}")


@dataclass(frozen=True)
class FamilyIbSolution:
    relation: RationalRelation
    pinned_index: int
    tau: float

    @property
    def template(self) -> str:
        return {
            1: "{1/2, r, 1/2-r}",
            2: "{r, 1/2, 1/2-r}",
            3: "{r, 1/2-r, 1/2}",
        }[self.pinned_index]

    def triad(self, r: float) -> Triad:
        return ib_template_triad(self.pinned_index, r)

    def times(self, count: int) -> tuple[float, ...]:
        """Odd multiples of τ; even multiples make both n and m even."""
        if count < 1:
            raise InvalidInputError(f"count must be >= 1, got {count}")
        return tuple((2 * k + 1) * self.tau for k in range(count))


def family1b_solutions(relation: RationalRelation, spectrum: Spectrum) -> FamilyIbSolution:
    assert not (relation.m % 2 == 0 and relation.n % 2 == 0)
    return FamilyIbSolution(
        relation=relation,
        pinned_index=relation.parity_case.pinned_index,
        tau=relation.n * math.pi / spectrum.omega21,
    )


# ── Family II ────────────────────────────────────────────────


def family2_components(omega21_tau: np.ndarray, Omega: np.ndarray) -> dict[str, np.ndarray]:
    """Vectorised Family-II formula on (ω21τ, Ω) arrays.

    Returns r1, r2, r3, the denominator D, a ``boundary`` mask (some
    |sin ω_ij τ| < ANGLE_TOL) and a ``valid`` mask (not boundary,
    |D| >= DENOMINATOR_TOL and every r_i in (0, 1)).
    """
    x = np.asarray(omega21_tau, dtype=float)
    w = np.asarray(Omega, dtype=float)
    s21 = np.sin(x)
    s32 = np.sin(w * x)
    s31 = np.sin((1.0 + w) * x)
    # cyclic: r1 ~ sin ω23τ, r2 ~ sin ω31τ, r3 ~ sin ω12τ
    num1, num2, num3 = -s32, s31, -s21
    denom = num1 + num2 + num3
    boundary = (np.abs(s21) < ANGLE_TOL) | (np.abs(s32) < ANGLE_TOL) | (np.abs(s31) < ANGLE_TOL)
    solvable = ~boundary & (np.abs(denom) >= DENOMINATOR_TOL)
    safe = np.where(solvable, denom, 1.0)
    r1, r2, r3 = num1 / safe, num2 / safe, num3 / safe
    inside = (r1 > 0.0) & (r1 < 1.0) & (r2 > 0.0) & (r2 < 1.0) & (r3 > 0.0) & (r3 < 1.0)
    return {
        "r1": r1,
        "r2": r2,
        "r3": r3,
        "denominator": denom,
        "boundary": boundary,
        "valid": solvable & inside,
    }


def _boundary_pairs(spectrum: Spectrum, tau: float, tol: float) -> tuple[tuple[int, int], ...]:
    return tuple(
        (i, j) for i, j in PAIRS if abs(math.sin(spectrum.omega(i, j) * tau)) < tol
    )


def family2_triad(spectrum: Spectrum, tau: float) -> Triad | None:
    """Family-II triad orthogonal at τ, or None when no such state exists."""
    tau = float(tau)
    if not math.isfinite(tau) or tau <= 0.0:
        raise InvalidInputError(f"tau must be finite and positive, got {tau!r}")
    pairs = _boundary_pairs(spectrum, tau, ANGLE_TOL)
    if pairs:
        raise BoundaryCaseError(pairs)

    s23 = math.sin(-spectrum.omega32 * tau)
    s31 = math.sin(spectrum.omega31 * tau)
    s12 = math.sin(-spectrum.omega21 * tau)
    denom = s23 + s31 + s12
    if abs(denom) < DENOMINATOR_TOL:
        logger.debug("Family II: vanishing denominator at tau=%r (%s)", tau, spectrum)
        return None
    r = (s23 / denom, s31 / denom, s12 / denom)
    if not all(0.0 < value < 1.0 for value in r):
        logger.debug("Family II: no physical triad at tau=%r (%s): r=%s", tau, spectrum, r)
        return None
    return Triad(*r)


def equally_spaced_triad(omega: float, tau: float) -> Triad | None:
    """ω21 = ω32 = ω: r1 = r3 = 1/(2(1 − cos ωτ)), r2 = cos ωτ/(cos ωτ − 1)."""
    omega, tau = float(omega), float(tau)
    if omega <= 0.0 or tau <= 0.0 or not (math.isfinite(omega) and math.isfinite(tau)):
        raise InvalidInputError("omega and tau must be finite and positive")
    phase = math.fmod(omega * tau, TWO_PI)
    if min(phase, TWO_PI - phase) < ANGLE_TOL:
        raise DegenerateInputError(f"cos(omega*tau) = 1 at omega*tau={omega * tau!r}")
    c = math.cos(omega * tau)
    outer = 1.0 / (2.0 * (1.0 - c))
    middle = c / (c - 1.0)
    if not (0.0 < outer < 1.0 and 0.0 < middle < 1.0):
        return None
    return Triad(outer, middle, outer)


def equal_weight_times(omega: float, count: int) -> tuple[float, ...]:
    """Orthogonality times of (1/3, 1/3, 1/3) for equal spacing: cos ωτ = −1/2."""
    if count < 1:
        raise InvalidInputError(f"count must be >= 1, got {count}")
    times: list[float] = []
    k = 0
    while len(times) < count:
        base = 2.0 * math.pi * k
        for offset in (2.0 * math.pi / 3.0, 4.0 * math.pi / 3.0):
            if len(times) < count:
                times.append((base + offset) / omega)
        k += 1
    return tuple(times)


# ── Boundary angles ──────────────────────────────────────────


@dataclass(frozen=True)
class BoundarySolutions:
    """Family-I solutions orthogonal at a boundary τ."""

    tau: float
    qubits: tuple[tuple[int, int], ...]
    ib: FamilyIbSolution | None

    @property
    def empty(self) -> bool:
        return not self.qubits and self.ib is None


def _integer_multiple(angle: float, tol: float) -> int | None:
    n = round(angle / math.pi)
    return int(n) if abs(angle - n * math.pi) < tol else None


def resolve_boundary(spectrum: Spectrum, tau: float, angle_tol: float = ANGLE_TOL) -> BoundarySolutions:
    """All Family-I solutions at a τ where some ω_ij τ is a multiple of π."""
    tau = float(tau)
    if not math.isfinite(tau) or tau <= 0.0:
        raise InvalidInputError(f"tau must be finite and positive, got {tau!r}")
    qubits = []
    for i, j in PAIRS:
        k = _integer_multiple(spectrum.omega(i, j) * tau, angle_tol)
        if k is not None and k % 2 == 1:
            qubits.append((i, j))

    ib = None
    n = _integer_multiple(spectrum.omega21 * tau, angle_tol)
    m = _integer_multiple(spectrum.omega32 * tau, angle_tol)
    if n and m and not (n % 2 == 0 and m % 2 == 0):
        g = math.gcd(m, n)
        relation = RationalRelation(m=m // g, n=n // g, parity_case=ParityCase.of(m, n))
        # the base time n·π/ω21 of the reduced relation; tau is an odd multiple of it
        ib = family1b_solutions(relation, spectrum)
    return BoundarySolutions(tau=tau, qubits=tuple(qubits), ib=ib)
