"""Brute-force orthogonality search used to cross-check the analytic solvers.

|⟨ψ(0)|ψ(t)⟩| is sampled on a uniform grid; every local minimum under the
bracket threshold is refined either with ``scipy.optimize.brentq`` on the
derivative of |amplitude|² or, when that derivative does not change sign on
the bracket, with a golden-section search on |amplitude|.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass
import logging
import math

import numpy as np
from scipy.optimize import brentq

from orthoqutrit.core.errors import StationaryStateError, ZeroSearchConfigError
from orthoqutrit.core.evolution import Spectrum, Triad, survival_amplitude, survival_amplitudes
from orthoqutrit.core.logging_config import log_discrepancy

logger = logging.getLogger("orthoqutrit.oracle")

DEFAULT_REFINE_TOL = 1e-10
DEFAULT_AMP_TOL = 1e-9
DEFAULT_BRACKET = 0.05
STEPS_PER_HALF_PERIOD = 20
MIN_STEPS_PER_HALF_PERIOD = 10
_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class ZeroSearchConfig:
    t_max: float
    scan_step: float
    refine_tol: float = DEFAULT_REFINE_TOL
    amp_tol: float = DEFAULT_AMP_TOL
    bracket: float = DEFAULT_BRACKET

    def __post_init__(self) -> None:
        for name in ("t_max", "scan_step", "refine_tol", "amp_tol", "bracket"):
            value = getattr(self, name)
            if not math.isfinite(value) or value <= 0.0:
                raise ZeroSearchConfigError(f"{name} must be a finite positive number, got {value!r}")
        if self.scan_step >= self.t_max:
            raise ZeroSearchConfigError("scan_step must be smaller than t_max")

    @classmethod
    def for_spectrum(
        cls,
        spectrum: Spectrum,
        *,
        t_max: float | None = None,
        scan_step: float | None = None,
        refine_tol: float = DEFAULT_REFINE_TOL,
        amp_tol: float = DEFAULT_AMP_TOL,
    ) -> "ZeroSearchConfig":
        """Defaults: 20 beat periods of ω21 (longer for small Ω), π/(20 ω31) steps."""
        if t_max is None:
            t_max = 20.0 * (2.0 * math.pi / spectrum.omega21) * max(1.0, 1.0 / spectrum.Omega)
        if scan_step is None:
            scan_step = math.pi / (STEPS_PER_HALF_PERIOD * spectrum.omega31)
        config = cls(t_max=t_max, scan_step=scan_step, refine_tol=refine_tol, amp_tol=amp_tol)
        config.check_for(spectrum)
        return config

    def check_for(self, spectrum: Spectrum) -> None:
        limit = math.pi / (MIN_STEPS_PER_HALF_PERIOD * spectrum.omega31)
        if self.scan_step > limit:
            raise ZeroSearchConfigError(
                f"scan_step {self.scan_step:g} exceeds pi/(10*omega31) = {limit:g} for this spectrum"
            )

    def to_dict(self) -> dict:
        return asdict(self)


def _require_superposition(triad: Triad) -> None:
    if len(triad.populated()) < 2:
        raise StationaryStateError(f"triad {tuple(triad)} is stationary and never leaves its initial state")


def _golden_section(f, a: float, b: float, tol: float) -> float:
    c = b - (b - a) * _INV_PHI
    d = a + (b - a) * _INV_PHI
    while abs(c - d) > tol:
        if f(c) < f(d):
            b = d
        else:
            a = c
        c = b - (b - a) * _INV_PHI
        d = a + (b - a) * _INV_PHI
    return 0.5 * (a + b)


class _Amplitude:
    """|A(t)| and d|A|²/dt for one triad and spectrum."""

    def __init__(self, triad: Triad, spectrum: Spectrum) -> None:
        self.r = triad.as_array()
        self.e = spectrum.energies

    def magnitude(self, t: float) -> float:
        return float(abs(np.dot(self.r, np.exp(-1j * self.e * t))))

    def slope(self, t: float) -> float:
        phases = np.exp(-1j * self.e * t)
        value = np.dot(self.r, phases)
        derivative = np.dot(-1j * self.e * self.r, phases)
        return float(2.0 * (np.conj(value) * derivative).real)


def _refine(amp: _Amplitude, a: float, b: float, config: ZeroSearchConfig) -> float:
    lo, hi = amp.slope(a), amp.slope(b)
    if lo < 0.0 < hi:
        return float(brentq(amp.slope, a, b, xtol=config.refine_tol * 1e-2))
    return _golden_section(amp.magnitude, a, b, config.refine_tol)


def orthogonality_times(
    triad: Triad,
    spectrum: Spectrum,
    config: ZeroSearchConfig | None = None,
    count: int | None = None,
) -> tuple[float, ...]:
    """Zeros of the survival amplitude on (0, t_max], in increasing order."""
    _require_superposition(triad)
    if config is None:
        config = ZeroSearchConfig.for_spectrum(spectrum)
    else:
        config.check_for(spectrum)

    steps = int(math.ceil(config.t_max / config.scan_step))
    ts = np.arange(steps + 1) * config.scan_step
    mags = np.abs(survival_amplitudes(triad, spectrum, ts))
    # |A| grows by at most ω31/2 per unit time away from a zero and the nearest
    # sample lies within half a step, so zeros sample below ω31·step/4
    threshold = max(config.bracket, spectrum.omega31 * config.scan_step / 2.0)
    inner = mags[1:-1]
    candidates = np.nonzero((inner <= mags[:-2]) & (inner <= mags[2:]) & (inner < threshold))[0] + 1

    amp = _Amplitude(triad, spectrum)
    zeros: list[float] = []
    for i in candidates:
        t = _refine(amp, float(ts[i - 1]), float(ts[i + 1]), config)
        if t > config.t_max or amp.magnitude(t) >= config.amp_tol:
            continue
        if zeros and t - zeros[-1] < config.scan_step:
            continue
        zeros.append(t)
        if count is not None and len(zeros) >= count:
            break
    logger.debug("Found %d orthogonality times for %s on [0, %g]", len(zeros), tuple(triad), config.t_max)
    return tuple(zeros)


def first_orthogonality_time(
    triad: Triad,
    spectrum: Spectrum,
    config: ZeroSearchConfig | None = None,
) -> float | None:
    zeros = orthogonality_times(triad, spectrum, config, count=1)
    return zeros[0] if zeros else None


def second_zero(
    triad: Triad,
    spectrum: Spectrum,
    config: ZeroSearchConfig | None = None,
) -> float | None:
    zeros = orthogonality_times(triad, spectrum, config, count=2)
    return zeros[1] if len(zeros) > 1 else None


# ── Verification ─────────────────────────────────────────────


@dataclass(frozen=True)
class VerificationReport:
    claimed_tau: float
    oracle_first_zero: float | None
    amplitude_at_claim: float
    agrees: bool
    is_first: bool

    def to_dict(self) -> dict:
        return asdict(self)


def verify_solution(
    triad: Triad,
    spectrum: Spectrum,
    claimed_tau: float,
    config: ZeroSearchConfig | None = None,
) -> VerificationReport:
    """Compare an analytic orthogonality time with the brute-force search.

    A first zero that precedes the claimed τ is recorded in the
    discrepancies log; the report still marks the claim as not first.
    """
    if config is None:
        config = ZeroSearchConfig.for_spectrum(spectrum)
    amplitude = abs(survival_amplitude(triad, spectrum, claimed_tau))
    first = first_orthogonality_time(triad, spectrum, config)
    agrees = amplitude < config.amp_tol
    is_first = first is not None and abs(first - claimed_tau) < config.refine_tol

    if agrees and first is not None and first < claimed_tau - config.refine_tol:
        logger.info(
            "Earlier orthogonality time for %s: oracle %.12g < claimed %.12g",
            tuple(triad), first, claimed_tau,
        )
        log_discrepancy(
            triad=tuple(triad),
            omega21=spectrum.omega21,
            omega32=spectrum.omega32,
            claimed_tau=claimed_tau,
            oracle_first_zero=first,
        )
    return VerificationReport(
        claimed_tau=float(claimed_tau),
        oracle_first_zero=first,
        amplitude_at_claim=float(amplitude),
        agrees=agrees,
        is_first=is_first,
    )
