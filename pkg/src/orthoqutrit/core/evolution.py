"""Three-level system and its survival amplitude.

Units: ħ = 1. The Hamiltonian is fixed up to an additive constant by the two
level spacings ω21 = E2 − E1 and ω32 = E3 − E2; the gauge E1 = 0 is used
throughout so |⟨ψ(0)|ψ(t)⟩| is reproducible bit for bit.
"""
from __future__ import annotations

from dataclasses import dataclass
import logging
import math
from typing import Iterator

import numpy as np

from orthoqutrit.core.errors import InvalidInputError

logger = logging.getLogger("orthoqutrit.evolution")

SUM_TOL = 1e-12
DEFAULT_ORTHO_TOL = 1e-10
TWO_PI = 2.0 * math.pi

# Level pairs (i, j) with i > j, in the order used by the qubit rows.
PAIRS: tuple[tuple[int, int], ...] = ((2, 1), (3, 1), (3, 2))


def _check_positive(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value) or value <= 0.0:
        raise InvalidInputError(f"{name} must be a finite positive number, got {value!r}")
    return value


def check_time(t: float) -> float:
    t = float(t)
    if not math.isfinite(t) or t < 0.0:
        raise InvalidInputError(f"time must be finite and non-negative, got {t!r}")
    return t


# ── Spectrum ─────────────────────────────────────────────────


@dataclass(frozen=True)
class Spectrum:
    """Non-degenerate, ordered spectrum E1 < E2 < E3 given by its spacings."""

    omega21: float
    omega32: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "omega21", _check_positive("omega21", self.omega21))
        object.__setattr__(self, "omega32", _check_positive("omega32", self.omega32))

    @classmethod
    def from_ratio(cls, Omega: float, omega21: float = 1.0) -> "Spectrum":
        """Build the spectrum with ω32 = Ω·ω21."""
        omega21 = _check_positive("omega21", omega21)
        return cls(omega21, _check_positive("Omega", Omega) * omega21)

    @property
    def omega31(self) -> float:
        return self.omega21 + self.omega32

    @property
    def Omega(self) -> float:
        return self.omega32 / self.omega21

    @property
    def energies(self) -> np.ndarray:
        return np.array([0.0, self.omega21, self.omega31])

    def omega(self, i: int, j: int) -> float:
        """Signed transition frequency ω_ij = E_i − E_j."""
        e = self.energies
        try:
            return float(e[i - 1] - e[j - 1])
        except IndexError:
            raise InvalidInputError(f"level indices must be 1..3, got ({i}, {j})") from None

    def scaled(self, factor: float) -> "Spectrum":
        factor = _check_positive("factor", factor)
        return Spectrum(self.omega21 * factor, self.omega32 * factor)


# ── Triad / state ────────────────────────────────────────────


@dataclass(frozen=True)
class Triad:
    """Energy distribution (r1, r2, r3) of the initial state."""

    r1: float
    r2: float
    r3: float

    def __post_init__(self) -> None:
        values = []
        for name in ("r1", "r2", "r3"):
            value = float(getattr(self, name))
            if not math.isfinite(value) or value < 0.0:
                raise InvalidInputError(f"{name} must be a finite probability, got {value!r}")
            values.append(value)
            object.__setattr__(self, name, value)
        total = math.fsum(values)
        if abs(total - 1.0) > SUM_TOL:
            raise InvalidInputError(f"triad must sum to 1 (got {total!r})")

    @classmethod
    def normalized(cls, r1: float, r2: float, r3: float) -> "Triad":
        """Rescale non-negative weights to a probability triple."""
        total = math.fsum((r1, r2, r3))
        if not math.isfinite(total) or total <= 0.0:
            raise InvalidInputError("weights must have a positive finite sum")
        return cls(r1 / total, r2 / total, r3 / total)

    def __iter__(self) -> Iterator[float]:
        return iter((self.r1, self.r2, self.r3))

    def __getitem__(self, index: int) -> float:
        """1-based access, matching the level labels."""
        if index not in (1, 2, 3):
            raise InvalidInputError(f"level index must be 1..3, got {index}")
        return (self.r1, self.r2, self.r3)[index - 1]

    def as_array(self) -> np.ndarray:
        return np.array([self.r1, self.r2, self.r3])

    def populated(self, tol: float = 0.0) -> tuple[int, ...]:
        """1-based indices of the levels with r_i > tol."""
        return tuple(i for i, r in enumerate(self, start=1) if r > tol)


@dataclass(frozen=True)
class QutritState:
    """Pure state √r_i e^{iθ_i}|E_i⟩. Phases are kept modulo 2π."""

    triad: Triad
    theta1: float = 0.0
    theta2: float = 0.0
    theta3: float = 0.0

    def __post_init__(self) -> None:
        for name in ("theta1", "theta2", "theta3"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise InvalidInputError(f"{name} must be finite")
            value = math.fmod(value, TWO_PI)
            if value < 0.0:
                value += TWO_PI
            if value >= TWO_PI:
                value = 0.0
            object.__setattr__(self, name, value)

    @property
    def phases(self) -> tuple[float, float, float]:
        return (self.theta1, self.theta2, self.theta3)

    def amplitudes(self) -> np.ndarray:
        """Components √r_i e^{iθ_i} in the energy basis."""
        return np.sqrt(self.triad.as_array()) * np.exp(1j * np.array(self.phases))

    def survival_amplitude(self, spectrum: Spectrum, t: float) -> complex:
        # Phases cancel in ⟨ψ(0)|ψ(t)⟩; only the triad is used.
        return survival_amplitude(self.triad, spectrum, t)


# ── Survival amplitude ───────────────────────────────────────


def survival_amplitude(triad: Triad, spectrum: Spectrum, t: float) -> complex:
    """⟨ψ(0)|ψ(t)⟩ = Σ r_i e^{−iE_i t} with E1 = 0."""
    t = check_time(t)
    r = triad.as_array()
    return complex(np.dot(r, np.exp(-1j * spectrum.energies * t)))


def survival_amplitudes(triad: Triad, spectrum: Spectrum, times: np.ndarray) -> np.ndarray:
    """Vectorised survival amplitude on an array of times."""
    times = np.asarray(times, dtype=float)
    if times.size and (not np.all(np.isfinite(times)) or times.min() < 0.0):
        raise InvalidInputError("times must be finite and non-negative")
    phases = np.exp(-1j * np.multiply.outer(times, spectrum.energies))
    return phases @ triad.as_array()


def survival_probability(triad: Triad, spectrum: Spectrum, t: float) -> float:
    """|⟨ψ(0)|ψ(t)⟩|², clipped into [0, 1]."""
    return min(abs(survival_amplitude(triad, spectrum, t)) ** 2, 1.0)


def is_orthogonal_at(
    triad: Triad,
    spectrum: Spectrum,
    t: float,
    tol: float = DEFAULT_ORTHO_TOL,
) -> bool:
    if tol <= 0.0:
        raise InvalidInputError(f"tol must be positive, got {tol!r}")
    return abs(survival_amplitude(triad, spectrum, t)) < tol
