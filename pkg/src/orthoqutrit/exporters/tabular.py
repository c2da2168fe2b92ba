"""CSV renderings of the scan, solve and classify results.

Column layouts:

- diagram: omega, omega21_tau, cell_type, r1, r2, r3
- simplex: r1, r2, r3, alpha, class, omega
- solve:   omega21, omega32, tau, family, r1, r2, r3, epsilon, sigma, alpha, tau_qsl, class
- classify: family, r1, r2, r3, never_orthogonal, times

Missing values are empty fields; multiple times are separated by ``;``.
"""
from __future__ import annotations

import csv
import io
from typing import Iterable, Sequence

from orthoqutrit.core.regions import DiagramScan, SimplexPoint
from orthoqutrit.exporters.records import ClassifyDocument, SolveDocument

DIAGRAM_COLUMNS = ("omega", "omega21_tau", "cell_type", "r1", "r2", "r3")
SIMPLEX_COLUMNS = ("r1", "r2", "r3", "alpha", "class", "omega")
SOLVE_COLUMNS = (
    "omega21", "omega32", "tau", "family", "r1", "r2", "r3",
    "epsilon", "sigma", "alpha", "tau_qsl", "class",
)
CLASSIFY_COLUMNS = ("family", "r1", "r2", "r3", "never_orthogonal", "times")


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _render(columns: Sequence[str], rows: Iterable[Sequence]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_cell(value) for value in row])
    return buffer.getvalue()


def diagram_csv(scan: DiagramScan) -> str:
    def rows():
        for cell in scan.cells():
            r = tuple(cell.triad) if cell.triad is not None else (None, None, None)
            yield (cell.Omega, cell.omega21_tau, cell.cell_type.value, *r)

    return _render(DIAGRAM_COLUMNS, rows())


def simplex_csv(points: Sequence[SimplexPoint]) -> str:
    return _render(
        SIMPLEX_COLUMNS,
        ((*tuple(p.triad), p.alpha, p.alpha_class.value, p.Omega) for p in points),
    )


def solve_csv(document: SolveDocument) -> str:
    triad = document.triad
    qsl = document.qsl
    row = (
        document.omega21,
        document.omega32,
        document.tau,
        document.family.text if document.family else None,
        triad.r1 if triad else None,
        triad.r2 if triad else None,
        triad.r3 if triad else None,
        qsl.mean_energy if qsl else None,
        qsl.dispersion if qsl else None,
        qsl.alpha if qsl else None,
        qsl.tau_qsl if qsl else None,
        qsl.classification if qsl else None,
    )
    return _render(SOLVE_COLUMNS, [row])


def classify_csv(document: ClassifyDocument) -> str:
    t = document.triad
    row = (
        document.family.text,
        t.r1,
        t.r2,
        t.r3,
        str(document.never_orthogonal).lower(),
        ";".join(repr(value) for value in document.times),
    )
    return _render(CLASSIFY_COLUMNS, [row])
