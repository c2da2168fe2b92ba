"""Geometry of the (Ω, ω21τ) solution diagram and the orthogonality simplex.

Within R1 = {0 < ω21τ < π} Family-II solutions fill the stripes

    (2l+1)π/(1+Ω) < ω21τ < π            for 2l <= Ω <= 2l+1
    (2l+1)π/(1+Ω) < ω21τ < (2l+1)π/Ω    for Ω >= 2l+1

delimited by the qubit borders: blue ω21τ = (2l+1)π, red ω31τ = (2l+1)π and
green ω32τ = (2l+1)π. Borders cross at the I-b points (stars, triangles and
squares).
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
import logging
import math
from typing import Iterator, Sequence

import numpy as np

from orthoqutrit.core.errors import InvalidInputError
from orthoqutrit.core.evolution import Spectrum, Triad
from orthoqutrit.core.families import (
    ANGLE_TOL,
    DEFAULT_MAX_DENOMINATOR,
    FamilyKind,
    family2_components,
    ib_template_triad,
    qubit_triad,
)
from orthoqutrit.core.qsl import BoundKind, alpha_closed_form, classify_bound, edge_alpha

logger = logging.getLogger("orthoqutrit.regions")

PI = math.pi


def tau_min(spectrum: Spectrum) -> float:
    """Global minimal orthogonality time π/ω31."""
    return PI / spectrum.omega31


# ── Stripes ──────────────────────────────────────────────────


class StripeRegime(str, Enum):
    PLATEAU = "plateau"
    DECAY = "decay"


@dataclass(frozen=True)
class StripeBounds:
    l: int
    lower: float
    upper: float
    regime: StripeRegime

    def contains(self, omega21_tau: float, margin: float = 0.0) -> bool:
        return self.lower + margin < omega21_tau < self.upper - margin

    @property
    def width(self) -> float:
        return self.upper - self.lower


def _check_Omega(Omega: float) -> float:
    Omega = float(Omega)
    if not math.isfinite(Omega) or Omega <= 0.0:
        raise InvalidInputError(f"Omega must be a finite positive number, got {Omega!r}")
    return Omega


def stripe_bounds(l: int, Omega: float) -> StripeBounds | None:
    """Bounds of stripe ``l`` in R1, or None when it is not present at Ω."""
    if l < 0:
        raise InvalidInputError(f"stripe index must be >= 0, got {l}")
    Omega = _check_Omega(Omega)
    if Omega < 2 * l:
        return None
    odd = 2 * l + 1
    lower = odd * PI / (1.0 + Omega)
    if Omega <= odd:
        upper, regime = PI, StripeRegime.PLATEAU
    else:
        upper, regime = odd * PI / Omega, StripeRegime.DECAY
    if lower >= upper:
        return None
    return StripeBounds(l=l, lower=lower, upper=upper, regime=regime)


def stripes_at(Omega: float) -> tuple[StripeBounds, ...]:
    """Every stripe crossing the vertical line Ω in R1, ordered by l."""
    Omega = _check_Omega(Omega)
    found = (stripe_bounds(l, Omega) for l in range(int(Omega // 2) + 1))
    return tuple(s for s in found if s is not None)


def replicate_omega(omega21_tau: float, Omega: float, l: int) -> float:
    """Ω_l = Ω + 2πl/(ω21τ): the same triad is orthogonal at (Ω_l, ω21τ)."""
    if omega21_tau <= 0.0:
        raise InvalidInputError(f"omega21_tau must be positive, got {omega21_tau!r}")
    return Omega + 2.0 * PI * l / omega21_tau


# ── Borders and intersections ────────────────────────────────


class BorderKind(str, Enum):
    BLUE = "blue"
    RED = "red"
    GREEN = "green"

    @property
    def bit(self) -> int:
        return _BORDER_BITS[self]

    @property
    def triad(self) -> Triad:
        """The qubit that is orthogonal along this border."""
        return qubit_triad(_BORDER_PAIRS[self])


_BORDER_BITS = {BorderKind.BLUE: 1, BorderKind.RED: 2, BorderKind.GREEN: 4}
_BORDER_PAIRS = {BorderKind.BLUE: (2, 1), BorderKind.RED: (3, 1), BorderKind.GREEN: (3, 2)}


def _borders_from_bits(bits: int) -> frozenset[BorderKind]:
    return frozenset(kind for kind in BorderKind if bits & kind.bit)


def _near_odd_multiple(angle: float, tol: float) -> bool:
    k = round((angle / PI - 1.0) / 2.0)
    return abs(angle - (2 * k + 1) * PI) < tol


def border_kind(omega21_tau: float, Omega: float, tol: float = ANGLE_TOL) -> frozenset[BorderKind]:
    """Borders passing through a point; several at a crossing, empty off the borders."""
    if omega21_tau <= 0.0:
        raise InvalidInputError(f"omega21_tau must be positive, got {omega21_tau!r}")
    Omega = _check_Omega(Omega)
    angles = {
        BorderKind.BLUE: omega21_tau,
        BorderKind.RED: omega21_tau * (1.0 + Omega),
        BorderKind.GREEN: omega21_tau * Omega,
    }
    return frozenset(kind for kind, angle in angles.items() if _near_odd_multiple(angle, tol))


class IntersectionKind(str, Enum):
    STAR = "star"
    TRIANGLE = "triangle"
    SQUARE = "square"

    @property
    def pinned_index(self) -> int:
        """Level pinned at 1/2 in the I-b triads at this point."""
        return {IntersectionKind.STAR: 1, IntersectionKind.TRIANGLE: 2, IntersectionKind.SQUARE: 3}[self]


_INTERSECTION_CODES = (IntersectionKind.STAR, IntersectionKind.TRIANGLE, IntersectionKind.SQUARE)


@dataclass(frozen=True)
class Intersection:
    """Crossing at ω21τ = nπ, ω32τ = mπ."""

    kind: IntersectionKind
    n: int
    m: int

    @property
    def l(self) -> int:
        return self.n // 2 - 1 if self.kind is IntersectionKind.SQUARE else (self.n - 1) // 2

    @property
    def l_prime(self) -> int:
        return self.m // 2 - 1 if self.kind is IntersectionKind.STAR else (self.m - 1) // 2


def _intersection_of(n: int, m: int) -> Intersection | None:
    if n < 1 or m < 1:
        return None
    if n % 2 == 1:
        kind = IntersectionKind.STAR if m % 2 == 0 else IntersectionKind.TRIANGLE
    elif m % 2 == 1:
        kind = IntersectionKind.SQUARE
    else:
        return None
    return Intersection(kind=kind, n=n, m=m)


def intersection_kind(
    omega21_tau: float,
    Omega: float,
    tol: float = ANGLE_TOL,
    max_index: int = DEFAULT_MAX_DENOMINATOR,
) -> Intersection | None:
    """Star, triangle or square marker at a point, with l, l' <= max_index."""
    if omega21_tau <= 0.0:
        raise InvalidInputError(f"omega21_tau must be positive, got {omega21_tau!r}")
    Omega = _check_Omega(Omega)
    n = round(omega21_tau / PI)
    m = round(omega21_tau * Omega / PI)
    if abs(omega21_tau - n * PI) >= tol or abs(omega21_tau * Omega - m * PI) >= tol:
        return None
    found = _intersection_of(int(n), int(m))
    if found is None or found.l > max_index or found.l_prime > max_index:
        return None
    return found


# ── Diagram scan ─────────────────────────────────────────────


class CellType(str, Enum):
    INTERIOR_II = "interior_II"
    BORDER = "border"
    INTERSECTION = "intersection"
    EMPTY = "empty"


_CELL_CODES = (CellType.INTERIOR_II, CellType.BORDER, CellType.INTERSECTION, CellType.EMPTY)
_INTERIOR, _BORDER, _INTERSECTION, _EMPTY = range(4)


@dataclass(frozen=True)
class DiagramCell:
    Omega: float
    omega21_tau: float
    cell_type: CellType
    triad: Triad | None = None
    borders: frozenset[BorderKind] = frozenset()
    intersection: IntersectionKind | None = None


@dataclass(frozen=True, eq=False)
class DiagramScan:
    """Cell-centred grid; row i_tau, column i_omega."""

    omega_range: tuple[float, float]
    tau_range: tuple[float, float]
    omegas: np.ndarray
    taus: np.ndarray
    codes: np.ndarray
    r: np.ndarray
    border_bits: np.ndarray
    intersections: np.ndarray

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.taus), len(self.omegas))

    def cell_type(self, i_tau: int, i_omega: int) -> CellType:
        return _CELL_CODES[int(self.codes[i_tau, i_omega])]

    def borders_at(self, i_tau: int, i_omega: int) -> frozenset[BorderKind]:
        return _borders_from_bits(int(self.border_bits[i_tau, i_omega]))

    def cell(self, i_tau: int, i_omega: int) -> DiagramCell:
        cell_type = _CELL_CODES[int(self.codes[i_tau, i_omega])]
        borders = _borders_from_bits(int(self.border_bits[i_tau, i_omega]))
        code = int(self.intersections[i_tau, i_omega])
        intersection = _INTERSECTION_CODES[code] if code >= 0 else None
        triad = None
        if cell_type is CellType.INTERIOR_II:
            triad = Triad(*(float(v) for v in self.r[i_tau, i_omega]))
        elif cell_type is CellType.BORDER:
            triad = min(borders, key=lambda kind: kind.bit).triad
        return DiagramCell(
            Omega=float(self.omegas[i_omega]),
            omega21_tau=float(self.taus[i_tau]),
            cell_type=cell_type,
            triad=triad,
            borders=borders,
            intersection=intersection,
        )

    def cell_at(self, Omega: float, omega21_tau: float) -> DiagramCell:
        """Cell whose rectangle contains the point (clamped to the grid)."""
        return self.cell(*self.index_of(Omega, omega21_tau))

    def index_of(self, Omega: float, omega21_tau: float) -> tuple[int, int]:
        n_tau, n_omega = self.shape
        d_omega = (self.omega_range[1] - self.omega_range[0]) / n_omega
        d_tau = (self.tau_range[1] - self.tau_range[0]) / n_tau
        i_omega = min(max(int((Omega - self.omega_range[0]) // d_omega), 0), n_omega - 1)
        i_tau = min(max(int((omega21_tau - self.tau_range[0]) // d_tau), 0), n_tau - 1)
        return i_tau, i_omega

    def cells(self) -> Iterator[DiagramCell]:
        """All cells in row-major order."""
        n_tau, n_omega = self.shape
        for i_tau in range(n_tau):
            for i_omega in range(n_omega):
                yield self.cell(i_tau, i_omega)

    def counts(self) -> dict[CellType, int]:
        return {kind: int(np.count_nonzero(self.codes == code)) for code, kind in enumerate(_CELL_CODES)}


def _check_range(name: str, bounds: Sequence[float]) -> tuple[float, float]:
    lo, hi = float(bounds[0]), float(bounds[1])
    if not (math.isfinite(lo) and math.isfinite(hi)) or lo < 0.0 or hi <= lo:
        raise InvalidInputError(f"{name} must satisfy 0 <= lo < hi, got ({lo!r}, {hi!r})")
    return lo, hi


def _holds_odd_multiple(lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    """True where [lo, hi] contains some (2k+1)π."""
    k = np.ceil((lo / PI - 1.0) / 2.0)
    return (2.0 * k + 1.0) * PI <= hi


def _scan_rows(
    omega_edges: np.ndarray,
    tau_edges: np.ndarray,
    max_index: int,
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Classify the rows spanned by ``tau_edges`` (len = rows + 1)."""
    om_lo, om_hi = omega_edges[:-1], omega_edges[1:]
    omegas = 0.5 * (om_lo + om_hi)
    x_lo = tau_edges[:-1, None]
    x_hi = tau_edges[1:, None]
    xs = 0.5 * (x_lo + x_hi)

    parts = family2_components(xs, omegas[None, :])

    bits = np.zeros(parts["valid"].shape, dtype=np.uint8)
    blue = _holds_odd_multiple(x_lo, x_hi) & np.ones_like(omegas, dtype=bool)
    red = _holds_odd_multiple(x_lo * (1.0 + om_lo), x_hi * (1.0 + om_hi))
    green = _holds_odd_multiple(x_lo * om_lo, x_hi * om_hi)
    bits[blue] |= BorderKind.BLUE.bit
    bits[red] |= BorderKind.RED.bit
    bits[green] |= BorderKind.GREEN.bit

    inter = np.full(bits.shape, -1, dtype=np.int8)
    for row in range(bits.shape[0]):
        n_first = max(1, math.ceil(tau_edges[row] / PI))
        n_last = math.floor(tau_edges[row + 1] / PI)
        for n in range(n_first, n_last + 1):
            m = np.maximum(np.ceil(n * om_lo), 1.0)
            if n % 2 == 0:
                # both even is not a marker; the next integer may be
                m = np.where(m % 2 == 0, m + 1.0, m)
            present = (m <= n * om_hi) & (inter[row] < 0)
            if n % 2 == 1:
                code = np.where(m % 2 == 0, 0, 1)
                l_prime = np.where(m % 2 == 0, m // 2 - 1, (m - 1) // 2)
                l = (n - 1) // 2
            else:
                code = np.full(m.shape, 2)
                l_prime = (m - 1) // 2
                l = n // 2 - 1
            present &= (l_prime <= max_index) & (l <= max_index)
            inter[row] = np.where(present, code, inter[row])

    codes = np.full(bits.shape, _EMPTY, dtype=np.int8)
    codes[parts["valid"]] = _INTERIOR
    codes[bits > 0] = _BORDER
    codes[inter >= 0] = _INTERSECTION

    # a centre sitting on a π multiple that the rectangles did not flag
    for row, col in zip(*np.nonzero(parts["boundary"] & (codes == _EMPTY))):
        x, w = float(xs[row, 0]), float(omegas[col])
        marker = intersection_kind(x, w, max_index=max_index)
        if marker is not None:
            inter[row, col] = _INTERSECTION_CODES.index(marker.kind)
            codes[row, col] = _INTERSECTION
            continue
        found = border_kind(x, w)
        if found:
            bits[row, col] = sum(kind.bit for kind in found)
            codes[row, col] = _BORDER

    r = np.stack([parts["r1"], parts["r2"], parts["r3"]], axis=-1)
    r[codes != _INTERIOR] = np.nan
    return codes, r, bits, inter


def scan_diagram(
    omega_range: Sequence[float],
    tau_range: Sequence[float],
    resolution: int | tuple[int, int],
    max_index: int = DEFAULT_MAX_DENOMINATOR,
    workers: int = 1,
) -> DiagramScan:
    """Classify every cell of a grid over (Ω, ω21τ).

    ``resolution`` is either one count for both axes or (n_omega, n_tau).
    Rows are split between ``workers`` threads and merged in order, so the
    result does not depend on the worker count.
    """
    omega_range = _check_range("omega_range", omega_range)
    tau_range = _check_range("tau_range", tau_range)
    n_omega, n_tau = (resolution, resolution) if isinstance(resolution, int) else resolution
    if n_omega < 1 or n_tau < 1:
        raise InvalidInputError(f"resolution must be >= 1, got {resolution!r}")
    if workers < 1:
        raise InvalidInputError(f"workers must be >= 1, got {workers}")

    omega_edges = np.linspace(omega_range[0], omega_range[1], n_omega + 1)
    tau_edges = np.linspace(tau_range[0], tau_range[1], n_tau + 1)
    bounds = np.linspace(0, n_tau, min(workers, n_tau) + 1).astype(int)
    chunks = [tau_edges[a : b + 1] for a, b in zip(bounds[:-1], bounds[1:]) if b > a]

    logger.info(
        "Diagram scan: Omega=%s tau=%s res=%dx%d workers=%d",
        omega_range, tau_range, n_omega, n_tau, workers,
    )
    if workers == 1:
        results = [_scan_rows(omega_edges, chunk, max_index) for chunk in chunks]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda chunk: _scan_rows(omega_edges, chunk, max_index), chunks))

    codes, r, bits, inter = (np.concatenate(parts, axis=0) for parts in zip(*results))
    scan = DiagramScan(
        omega_range=omega_range,
        tau_range=tau_range,
        omegas=0.5 * (omega_edges[:-1] + omega_edges[1:]),
        taus=0.5 * (tau_edges[:-1] + tau_edges[1:]),
        codes=codes,
        r=r,
        border_bits=bits,
        intersections=inter,
    )
    logger.debug("Diagram scan counts: %s", {k.value: v for k, v in scan.counts().items()})
    return scan


# ── Simplex map ──────────────────────────────────────────────


@dataclass(frozen=True)
class SimplexPoint:
    triad: Triad
    alpha: float
    alpha_class: BoundKind
    Omega: float
    family: FamilyKind

    def barycentric(self) -> tuple[float, float]:
        """Planar position: vertex 1 at (0, 0), 2 at (1, 0), 3 at (1/2, √3/2)."""
        return (self.triad.r2 + 0.5 * self.triad.r3, self.triad.r3 * math.sqrt(3.0) / 2.0)


def _interior_points(Omega: float, tau_resolution: int) -> list[SimplexPoint]:
    points: list[SimplexPoint] = []
    steps = (np.arange(tau_resolution) + 0.5) / tau_resolution
    for stripe in stripes_at(Omega):
        xs = stripe.lower + steps * stripe.width
        parts = family2_components(xs, Omega)
        r = np.stack([parts["r1"], parts["r2"], parts["r3"]], axis=-1)
        keep = parts["valid"] & (r.max(axis=-1) < 0.5)
        alphas = alpha_closed_form(r[:, 1], r[:, 2], Omega)
        for row in np.nonzero(keep)[0]:
            a = float(alphas[row])
            points.append(
                SimplexPoint(
                    triad=Triad(*(float(v) for v in r[row])),
                    alpha=a,
                    alpha_class=classify_bound(a),
                    Omega=Omega,
                    family=FamilyKind.II,
                )
            )
    return points


def _edge_points(Omega: float, tau_resolution: int) -> list[SimplexPoint]:
    points: list[SimplexPoint] = []
    rs = 0.5 * (np.arange(tau_resolution) + 0.5) / tau_resolution
    for edge in (1, 2, 3):
        for r in rs:
            a = edge_alpha(edge, float(r), Omega)
            points.append(
                SimplexPoint(
                    triad=ib_template_triad(edge, float(r)),
                    alpha=a,
                    alpha_class=classify_bound(a),
                    Omega=Omega,
                    family=FamilyKind.I_B,
                )
            )
    return points


def _vertex_points(Omega: float) -> list[SimplexPoint]:
    return [
        SimplexPoint(
            triad=qubit_triad(kind_pair),
            alpha=1.0,
            alpha_class=BoundKind.EQUAL,
            Omega=Omega,
            family=FamilyKind.I_QUBIT,
        )
        for kind_pair in ((2, 1), (3, 1), (3, 2))
    ]


def scan_simplex(Omega_samples: Sequence[float], tau_resolution: int) -> tuple[SimplexPoint, ...]:
    """Points of the orthogonality simplex coloured by α, for each sampled Ω.

    Interior points come from the Family-II formula sampled along every
    stripe; edges from the I-b templates; the three qubit vertices close it.
    """
    if tau_resolution < 1:
        raise InvalidInputError(f"tau_resolution must be >= 1, got {tau_resolution}")
    points: list[SimplexPoint] = []
    for Omega in Omega_samples:
        Omega = _check_Omega(Omega)
        points.extend(_interior_points(Omega, tau_resolution))
        points.extend(_edge_points(Omega, tau_resolution))
        points.extend(_vertex_points(Omega))
    logger.info("Simplex scan: %d Omega samples, %d points", len(Omega_samples), len(points))
    return tuple(points)
