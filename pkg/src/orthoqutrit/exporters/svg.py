"""SVG figures of the solution diagram and of the simplex map.

The markup is written directly: runs of equal cells become one ``<rect>``,
markers are ``<polygon>``/``<rect>`` shapes and simplex points ``<circle>``.
"""
from __future__ import annotations

import math
from typing import Sequence
from xml.sax.saxutils import escape

import numpy as np

from orthoqutrit.core.qsl import BoundKind
from orthoqutrit.core.regions import BorderKind, CellType, DiagramScan, IntersectionKind, SimplexPoint

WIDTH = 800
HEIGHT = 600
MARGIN = 50

INTERIOR_FILL = "#9ecae1"
BORDER_COLORS = {
    BorderKind.BLUE: "#1f3fff",
    BorderKind.RED: "#e0201b",
    BorderKind.GREEN: "#1a9e2f",
}
BOUND_COLORS = {
    BoundKind.MT: "#00bcd4",
    BoundKind.ML: "#e040fb",
    BoundKind.EQUAL: "#000000",
}
MARKER_SIZE = 5.0


def _num(value: float) -> str:
    return f"{value:.3f}"


def _header(width: int, height: int, title: str) -> list[str]:
    return [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f"<title>{escape(title)}</title>",
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="#ffffff"/>',
    ]


def _star(cx: float, cy: float, size: float) -> str:
    points = []
    for k in range(10):
        radius = size if k % 2 == 0 else size * 0.45
        angle = -math.pi / 2 + k * math.pi / 5
        points.append(f"{_num(cx + radius * math.cos(angle))},{_num(cy + radius * math.sin(angle))}")
    return f'<polygon points="{" ".join(points)}" fill="#ffd400" stroke="#000000" stroke-width="0.6"/>'


def _left_triangle(cx: float, cy: float, size: float) -> str:
    pts = [(cx - size, cy), (cx + size, cy - size), (cx + size, cy + size)]
    coords = " ".join(f"{_num(x)},{_num(y)}" for x, y in pts)
    return f'<polygon points="{coords}" fill="#ff8c00" stroke="#000000" stroke-width="0.6"/>'


def _square(cx: float, cy: float, size: float) -> str:
    return (
        f'<rect x="{_num(cx - size)}" y="{_num(cy - size)}" width="{_num(2 * size)}" '
        f'height="{_num(2 * size)}" fill="#7b3fbf" stroke="#000000" stroke-width="0.6"/>'
    )


_MARKERS = {
    IntersectionKind.STAR: _star,
    IntersectionKind.TRIANGLE: _left_triangle,
    IntersectionKind.SQUARE: _square,
}


def _cell_fill(scan: DiagramScan, i_tau: int, i_omega: int) -> str | None:
    cell_type = scan.cell_type(i_tau, i_omega)
    if cell_type is CellType.INTERIOR_II:
        return INTERIOR_FILL
    borders = scan.borders_at(i_tau, i_omega)
    if cell_type is not CellType.EMPTY and borders:
        return BORDER_COLORS[min(borders, key=lambda kind: kind.bit)]
    return None


def diagram_svg(scan: DiagramScan) -> str:
    """Stripes, border curves, the τ_min curve and intersection markers."""
    (om_lo, om_hi), (x_lo, x_hi) = scan.omega_range, scan.tau_range
    n_tau, n_omega = scan.shape
    cell_w = WIDTH / n_omega
    cell_h = HEIGHT / n_tau

    def px(Omega: float) -> float:
        return MARGIN + (Omega - om_lo) / (om_hi - om_lo) * WIDTH

    def py(x: float) -> float:
        return MARGIN + HEIGHT - (x - x_lo) / (x_hi - x_lo) * HEIGHT

    lines = _header(WIDTH + 2 * MARGIN, HEIGHT + 2 * MARGIN, "Orthogonality diagram: omega21*tau vs Omega")
    lines.append('<g id="cells" shape-rendering="crispEdges">')
    markers: list[str] = []
    for i_tau in range(n_tau):
        y = MARGIN + HEIGHT - (i_tau + 1) * cell_h
        run_start, run_fill = 0, None
        for i_omega in range(n_omega + 1):
            fill = _cell_fill(scan, i_tau, i_omega) if i_omega < n_omega else None
            if fill != run_fill or i_omega == n_omega:
                if run_fill is not None:
                    lines.append(
                        f'<rect x="{_num(MARGIN + run_start * cell_w)}" y="{_num(y)}" '
                        f'width="{_num((i_omega - run_start) * cell_w)}" height="{_num(cell_h)}" '
                        f'fill="{run_fill}"/>'
                    )
                run_start, run_fill = i_omega, fill
            if i_omega < n_omega and scan.intersections[i_tau, i_omega] >= 0:
                kind = scan.cell(i_tau, i_omega).intersection
                markers.append(
                    _MARKERS[kind](px(float(scan.omegas[i_omega])), py(float(scan.taus[i_tau])), MARKER_SIZE)
                )
    lines.append("</g>")

    # τ_min frontier: ω21 τ_min = π/(1+Ω)
    omegas = np.linspace(om_lo, om_hi, 400)
    frontier = np.pi / (1.0 + omegas)
    inside = (frontier >= x_lo) & (frontier <= x_hi)
    if inside.any():
        coords = " ".join(f"{_num(px(w))},{_num(py(x))}" for w, x in zip(omegas[inside], frontier[inside]))
        lines.append(
            f'<polyline id="tau-min" points="{coords}" fill="none" stroke="#000000" '
            f'stroke-width="1.2" stroke-dasharray="6,4"/>'
        )

    lines.append('<g id="markers">')
    lines.extend(markers)
    lines.append("</g>")
    lines.extend(_axes(om_lo, om_hi, x_lo, x_hi, "Ω", "ω21τ"))
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def _axes(x0: float, x1: float, y0: float, y1: float, x_label: str, y_label: str) -> list[str]:
    left, bottom = MARGIN, MARGIN + HEIGHT
    out = [
        f'<line x1="{left}" y1="{bottom}" x2="{left + WIDTH}" y2="{bottom}" stroke="#000000"/>',
        f'<line x1="{left}" y1="{bottom}" x2="{left}" y2="{MARGIN}" stroke="#000000"/>',
        f'<text x="{left + WIDTH / 2}" y="{bottom + 35}" text-anchor="middle" font-size="14">{escape(x_label)}</text>',
        f'<text x="15" y="{MARGIN + HEIGHT / 2}" text-anchor="middle" font-size="14" '
        f'transform="rotate(-90 15 {MARGIN + HEIGHT / 2})">{escape(y_label)}</text>',
    ]
    for frac in (0.0, 0.25, 0.5, 0.75, 1.0):
        tx = left + frac * WIDTH
        ty = bottom - frac * HEIGHT
        out.append(
            f'<text x="{_num(tx)}" y="{bottom + 15}" text-anchor="middle" font-size="10">'
            f"{x0 + frac * (x1 - x0):.3g}</text>"
        )
        out.append(
            f'<text x="{left - 5}" y="{_num(ty + 3)}" text-anchor="end" font-size="10">'
            f"{y0 + frac * (y1 - y0):.3g}</text>"
        )
    return out


def simplex_svg(points: Sequence[SimplexPoint]) -> str:
    """Barycentric map of the orthogonality simplex, MT cyan and ML magenta."""
    side = min(WIDTH, HEIGHT * 2 / math.sqrt(3.0))
    height = side * math.sqrt(3.0) / 2.0

    def project(u: float, v: float) -> tuple[float, float]:
        return MARGIN + u * side, MARGIN + height - v * side

    corners = [project(0.0, 0.0), project(1.0, 0.0), project(0.5, math.sqrt(3.0) / 2.0)]
    lines = _header(int(side + 2 * MARGIN), int(height + 2 * MARGIN), "Speed-limit map of the orthogonality simplex")
    outline = " ".join(f"{_num(x)},{_num(y)}" for x, y in corners)
    lines.append(f'<polygon points="{outline}" fill="none" stroke="#000000" stroke-width="1"/>')
    for label, (x, y), dx, dy in zip(("r1=1", "r2=1", "r3=1"), corners, (-30, 8, -15), (15, 15, -8)):
        lines.append(f'<text x="{_num(x + dx)}" y="{_num(y + dy)}" font-size="12">{label}</text>')

    lines.append('<g id="points">')
    for point in points:
        x, y = project(*point.barycentric())
        lines.append(
            f'<circle cx="{_num(x)}" cy="{_num(y)}" r="1.5" fill="{BOUND_COLORS[point.alpha_class]}"/>'
        )
    lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
