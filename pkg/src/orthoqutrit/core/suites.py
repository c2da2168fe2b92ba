"""Seeded verification suites run by ``orthoqutrit verify``.

``analytic`` draws orthogonal pairs (triad, τ) from the closed-form solvers
and checks each against the oracle. ``random`` draws arbitrary triads and
spectra and checks that the classifier and the oracle agree on whether an
orthogonal state is ever reached.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from enum import Enum
import logging
import math

import numpy as np

from orthoqutrit.core.errors import BoundaryCaseError, InvalidInputError
from orthoqutrit.core.evolution import PAIRS, Spectrum, Triad, survival_amplitudes
from orthoqutrit.core.families import (
    FamilyKind,
    ParityCase,
    RationalRelation,
    classify_triad,
    family1_qubit_times,
    family1b_solutions,
    family2_triad,
    qubit_triad,
)
from orthoqutrit.core.logging_config import log_discrepancy
from orthoqutrit.core.oracle import ZeroSearchConfig, first_orthogonality_time
from orthoqutrit.core.qsl import qsl_report
from orthoqutrit.core.regions import stripes_at

logger = logging.getLogger("orthoqutrit.suites")

QSL_SLACK = 1e-9
STRIPE_MARGIN = 1e-3
FAMILY2_MATCH_TOL = 1e-6
OMEGA_RANGE = (0.2, 6.0)
OMEGA21_RANGE = (0.5, 2.0)


class SuiteName(str, Enum):
    ANALYTIC = "analytic"
    RANDOM = "random"


@dataclass(frozen=True)
class CaseResult:
    index: int
    family: str
    triad: tuple[float, float, float]
    omega21: float
    omega32: float
    claimed_tau: float | None
    oracle_first_zero: float | None
    residual: float | None
    tau_qsl: float
    passed: bool
    reason: str = ""
    discrepancy: bool = False


@dataclass
class SuiteReport:
    suite: SuiteName
    count: int
    seed: int
    cases: list[CaseResult] = field(default_factory=list)

    @property
    def passed(self) -> int:
        return sum(1 for case in self.cases if case.passed)

    @property
    def failed(self) -> int:
        return len(self.cases) - self.passed

    @property
    def ok(self) -> bool:
        return self.failed == 0

    @property
    def max_residual(self) -> float | None:
        residuals = [case.residual for case in self.cases if case.residual is not None]
        return max(residuals) if residuals else None

    @property
    def discrepancies(self) -> int:
        return sum(1 for case in self.cases if case.discrepancy)

    @property
    def failures(self) -> list[CaseResult]:
        return [case for case in self.cases if not case.passed]

    def to_dict(self) -> dict:
        return {
            "suite": self.suite.value,
            "count": self.count,
            "seed": self.seed,
            "passed": self.passed,
            "failed": self.failed,
            "max_residual": self.max_residual,
            "discrepancies": self.discrepancies,
            "cases": [asdict(case) for case in self.cases],
        }


@dataclass(frozen=True)
class _Case:
    family: str
    triad: Triad
    spectrum: Spectrum
    claimed_tau: float | None


# ── Case generation ──────────────────────────────────────────


def _random_spectrum(rng: np.random.Generator) -> Spectrum:
    omega21 = float(rng.uniform(*OMEGA21_RANGE))
    Omega = float(math.exp(rng.uniform(math.log(OMEGA_RANGE[0]), math.log(OMEGA_RANGE[1]))))
    return Spectrum.from_ratio(Omega, omega21)


def _family2_case(rng: np.random.Generator) -> _Case:
    while True:
        spectrum = _random_spectrum(rng)
        stripes = stripes_at(spectrum.Omega)
        stripe = stripes[int(rng.integers(len(stripes)))]
        margin = STRIPE_MARGIN * stripe.width
        x = float(rng.uniform(stripe.lower + margin, stripe.upper - margin))
        tau = x / spectrum.omega21
        triad = family2_triad(spectrum, tau)
        if triad is not None:
            return _Case("II", triad, spectrum, tau)


def _qubit_case(rng: np.random.Generator) -> _Case:
    spectrum = _random_spectrum(rng)
    pair = PAIRS[int(rng.integers(len(PAIRS)))]
    tau = family1_qubit_times(pair, spectrum, 1).times[0]
    return _Case("I-qubit", qubit_triad(pair), spectrum, tau)


def _ib_case(rng: np.random.Generator) -> _Case:
    while True:
        n, m = int(rng.integers(1, 5)), int(rng.integers(1, 7))
        if math.gcd(m, n) == 1:
            break
    omega21 = float(rng.uniform(*OMEGA21_RANGE))
    spectrum = Spectrum(omega21, omega21 * m / n)
    solution = family1b_solutions(RationalRelation(m, n, ParityCase.of(m, n)), spectrum)
    triad = solution.triad(float(rng.uniform(0.05, 0.45)))
    return _Case("I-b", triad, spectrum, solution.tau)


def _analytic_cases(count: int, rng: np.random.Generator) -> list[_Case]:
    cases = []
    for index in range(count):
        # mostly Family II, with every fifth a qubit and every seventh an I-b edge
        if index % 7 == 6:
            cases.append(_ib_case(rng))
        elif index % 5 == 4:
            cases.append(_qubit_case(rng))
        else:
            cases.append(_family2_case(rng))
    return cases


def _random_cases(count: int, rng: np.random.Generator) -> list[_Case]:
    cases = []
    for _ in range(count):
        weights = rng.dirichlet((1.0, 1.0, 1.0))
        triad = Triad.normalized(*(float(w) for w in weights))
        cases.append(_Case(str(classify_triad(triad).kind.value), triad, _random_spectrum(rng), None))
    return cases


# ── Checks ───────────────────────────────────────────────────


def _check_analytic(index: int, case: _Case) -> CaseResult:
    config = ZeroSearchConfig.for_spectrum(case.spectrum)
    residual = float(abs(survival_amplitudes(case.triad, case.spectrum, np.array([case.claimed_tau]))[0]))
    first = first_orthogonality_time(case.triad, case.spectrum, config)
    tau_qsl = qsl_report(case.triad, case.spectrum).tau_qsl

    reason = ""
    discrepancy = False
    if residual >= config.amp_tol:
        reason = f"amplitude {residual:.3g} at claimed tau"
    elif first is None:
        reason = "oracle found no zero"
    elif first > case.claimed_tau + config.refine_tol:
        reason = f"oracle first zero {first:.12g} after claimed tau"
    elif case.claimed_tau < tau_qsl - QSL_SLACK:
        reason = f"claimed tau below tau_qsl {tau_qsl:.12g}"
    elif first < tau_qsl - QSL_SLACK:
        reason = f"oracle zero below tau_qsl {tau_qsl:.12g}"
    elif first < case.claimed_tau - config.refine_tol:
        discrepancy = True
        logger.info("Case %d: oracle zero %.12g precedes claimed %.12g", index, first, case.claimed_tau)
        log_discrepancy(
            triad=tuple(case.triad),
            omega21=case.spectrum.omega21,
            omega32=case.spectrum.omega32,
            claimed_tau=case.claimed_tau,
            oracle_first_zero=first,
        )

    return CaseResult(
        index=index,
        family=case.family,
        triad=tuple(case.triad),
        omega21=case.spectrum.omega21,
        omega32=case.spectrum.omega32,
        claimed_tau=case.claimed_tau,
        oracle_first_zero=first,
        residual=residual,
        tau_qsl=tau_qsl,
        passed=not reason,
        reason=reason,
        discrepancy=discrepancy,
    )


def _family2_mismatch(case: _Case, tau: float) -> str:
    """Empty when the Family-II solver at ``tau`` returns the case's triad."""
    try:
        expected = family2_triad(case.spectrum, tau)
    except BoundaryCaseError as exc:
        return f"zero at boundary angle {tau:.12g}: {exc}"
    if expected is None:
        return f"no Family-II triad at oracle zero {tau:.12g}"
    gap = float(np.abs(expected.as_array() - case.triad.as_array()).max())
    if gap > FAMILY2_MATCH_TOL:
        return f"Family-II triad at oracle zero differs by {gap:.3g}"
    return ""


def _check_random(index: int, case: _Case) -> CaseResult:
    config = ZeroSearchConfig.for_spectrum(case.spectrum)
    label = classify_triad(case.triad)
    first = first_orthogonality_time(case.triad, case.spectrum, config)
    tau_qsl = qsl_report(case.triad, case.spectrum).tau_qsl

    reason = ""
    residual = None
    if first is not None:
        residual = float(abs(survival_amplitudes(case.triad, case.spectrum, np.array([first]))[0]))
        if not label.can_reach_orthogonality:
            reason = f"{label} triad reached orthogonality at {first:.12g}"
        elif first < tau_qsl - QSL_SLACK:
            reason = f"oracle zero below tau_qsl {tau_qsl:.12g}"
        elif label.kind is FamilyKind.II:
            reason = _family2_mismatch(case, first)
    elif label.kind is FamilyKind.NOT_CLASSIFIED:
        # Family-II triads are orthogonal for isolated spectra only, so a missing
        # zero is checked against the amplitude floor for unclassified triads alone
        ts = np.arange(0.0, config.t_max, config.scan_step)
        floor = 2.0 * max(case.triad) - 1.0
        lowest = float(np.abs(survival_amplitudes(case.triad, case.spectrum, ts)).min())
        if lowest < floor - 1e-12:
            reason = f"min amplitude {lowest:.6g} below the bound {floor:.6g}"

    return CaseResult(
        index=index,
        family=case.family,
        triad=tuple(case.triad),
        omega21=case.spectrum.omega21,
        omega32=case.spectrum.omega32,
        claimed_tau=None,
        oracle_first_zero=first,
        residual=residual,
        tau_qsl=tau_qsl,
        passed=not reason,
        reason=reason,
    )


def run_suite(suite: SuiteName | str, count: int, seed: int, workers: int = 1) -> SuiteReport:
    """Generate ``count`` seeded cases and check them, optionally on threads."""
    suite = SuiteName(suite)
    if count < 1:
        raise InvalidInputError(f"count must be >= 1, got {count}")
    rng = np.random.default_rng(seed)
    if suite is SuiteName.ANALYTIC:
        cases, check = _analytic_cases(count, rng), _check_analytic
    else:
        cases, check = _random_cases(count, rng), _check_random

    logger.info("Running %s suite: count=%d seed=%d workers=%d", suite.value, count, seed, workers)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(check, range(count), cases))
    else:
        results = [check(index, case) for index, case in enumerate(cases)]

    report = SuiteReport(suite=suite, count=count, seed=seed, cases=results)
    for failure in report.failures:
        logger.warning("Case %d (%s) failed: %s", failure.index, failure.family, failure.reason)
    return report
