"""Energetics of a triad and the unified quantum speed limit.

ε is the mean energy above the lowest level that contributes to the state,
σ_H the energy dispersion, α = σ_H/ε. The orthogonality time obeys
τ ≥ τ_qsl = max(π/2ε, π/2σ_H); α < 1 means the Mandelstam–Tamm term binds
and α > 1 the Margolus–Levitin one.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass
from enum import Enum
import logging
import math

import numpy as np

from orthoqutrit.core.errors import InvalidInputError, OutOfDomainError, StationaryStateError
from orthoqutrit.core.evolution import Spectrum, Triad
from orthoqutrit.core.families import CLASSIFY_TOL, FamilyKind, classify_triad

logger = logging.getLogger("orthoqutrit.qsl")

BOUND_TOL = 1e-9


class BoundKind(str, Enum):
    MT = "MT"
    ML = "ML"
    EQUAL = "EQUAL"


@dataclass(frozen=True)
class QslReport:
    mean_energy: float
    dispersion: float
    alpha: float
    tau_qsl: float
    classification: BoundKind

    @property
    def tau_mt(self) -> float:
        return math.pi / (2.0 * self.dispersion)

    @property
    def tau_ml(self) -> float:
        return math.pi / (2.0 * self.mean_energy)

    def to_dict(self) -> dict:
        data = asdict(self)
        data["classification"] = self.classification.value
        return data


def _require_superposition(triad: Triad) -> tuple[int, ...]:
    # weights at or below CLASSIFY_TOL count as empty, as in classify_triad
    populated = triad.populated(CLASSIFY_TOL)
    if len(populated) < 2:
        raise StationaryStateError(f"triad {tuple(triad)} is stationary; the speed limit is undefined")
    return populated


def mean_energy(triad: Triad, spectrum: Spectrum) -> float:
    """ε = Σ r_i (E_i − E_ref), E_ref the lowest contributing level."""
    populated = _require_superposition(triad)
    energies = spectrum.energies
    reference = energies[populated[0] - 1]
    return float(np.dot(triad.as_array(), energies - reference))


def energy_dispersion(triad: Triad, spectrum: Spectrum) -> float:
    """σ_H = ω21 √(r1r2 + r1r3(1+Ω)² + r2r3Ω²)."""
    _require_superposition(triad)
    r1, r2, r3 = triad
    Omega = spectrum.Omega
    variance = r1 * r2 + r1 * r3 * (1.0 + Omega) ** 2 + r2 * r3 * Omega**2
    return spectrum.omega21 * math.sqrt(variance)


def energy_dispersion_pairwise(triad: Triad, spectrum: Spectrum) -> float:
    """σ_H from √(½ Σ_{i,k} r_i r_k ω_ik²)."""
    _require_superposition(triad)
    r = triad.as_array()
    e = spectrum.energies
    gaps = np.subtract.outer(e, e)
    return float(math.sqrt(0.5 * float(r @ (gaps**2) @ r)))


def alpha_closed_form(r2, r3, Omega):
    """α for triads with r1 > 0 (reference E1); accepts scalars or arrays."""
    shifted = 1.0 + np.asarray(Omega, dtype=float)
    second_moment = r2 + r3 * shifted**2
    mean = r2 + r3 * shifted
    return np.sqrt(np.maximum(second_moment / mean**2 - 1.0, 0.0))


def alpha(triad: Triad, Omega: float) -> float:
    """σ_H/ε; independent of ω21, so only Ω is needed.

    Equal-weight qubits are α = 1 by definition. Other triads without level 1
    are measured from their lowest contributing level.
    """
    Omega = float(Omega)
    if not math.isfinite(Omega) or Omega <= 0.0:
        raise InvalidInputError(f"Omega must be a finite positive number, got {Omega!r}")
    populated = _require_superposition(triad)
    if classify_triad(triad).kind is FamilyKind.I_QUBIT:
        return 1.0
    if populated[0] == 1:
        return float(alpha_closed_form(triad.r2, triad.r3, Omega))
    spectrum = Spectrum.from_ratio(Omega)
    return energy_dispersion(triad, spectrum) / mean_energy(triad, spectrum)


def classify_bound(alpha_value: float, tol: float = BOUND_TOL) -> BoundKind:
    if alpha_value < 1.0 - tol:
        return BoundKind.MT
    if alpha_value > 1.0 + tol:
        return BoundKind.ML
    return BoundKind.EQUAL


def qsl_report(triad: Triad, spectrum: Spectrum) -> QslReport:
    eps = mean_energy(triad, spectrum)
    sigma = energy_dispersion(triad, spectrum)
    a = alpha(triad, spectrum.Omega)
    return QslReport(
        mean_energy=eps,
        dispersion=sigma,
        alpha=a,
        tau_qsl=max(math.pi / (2.0 * eps), math.pi / (2.0 * sigma)),
        classification=classify_bound(a),
    )


# ── I-b edges ────────────────────────────────────────────────


def edge_alpha(edge: int, r: float, Omega: float) -> float:
    """α along the simplex edge where level ``edge`` carries 1/2.

    The other two levels hold (r, 1/2 − r) in the order of
    :func:`orthoqutrit.core.families.ib_template_triad`.
    """
    if not 0.0 < r < 0.5:
        raise OutOfDomainError(f"edge parameter r must lie in (0, 1/2), got {r!r}")
    Omega = float(Omega)
    if not math.isfinite(Omega) or Omega <= 0.0:
        raise InvalidInputError(f"Omega must be a finite positive number, got {Omega!r}")

    if edge == 1:
        mean = r + (0.5 - r) * (1.0 + Omega)
        squared = 1.0 + r * (1.0 - 2.0 * r) * Omega**2 / mean**2
    elif edge == 2:
        mean = 1.0 - r + Omega * (0.5 - r)
        squared = 1.0 + (1.0 - 2.0 * r) * (1.0 + Omega) * (r * (1.0 + Omega) - 1.0) / mean**2
    elif edge == 3:
        mean = 1.0 - r + Omega / 2.0
        squared = 1.0 - (1.0 - 2.0 * r) * (1.0 - r + Omega) / mean**2
    else:
        raise InvalidInputError(f"edge must be 1, 2 or 3, got {edge!r}")
    return math.sqrt(max(squared, 0.0))


def edge_crossover(Omega: float) -> float | None:
    """r* = 1/(1+Ω) where α crosses 1 on the r2 = 1/2 edge; None for Ω <= 1."""
    if Omega <= 1.0:
        return None
    return 1.0 / (1.0 + Omega)
