"""JSON documents written by the CLI.

Every document starts with a :class:`Metadata` header (tool version,
tolerances, seed). No timestamps are included so that identical runs
produce identical bytes.
"""
from __future__ import annotations

from typing import Any

from pydantic import BaseModel, Field

from orthoqutrit import __version__
from orthoqutrit.core.evolution import Triad
from orthoqutrit.core.families import ANGLE_TOL, CLASSIFY_TOL, BoundarySolutions, FamilyLabel
from orthoqutrit.core.oracle import DEFAULT_AMP_TOL, DEFAULT_BRACKET, DEFAULT_REFINE_TOL
from orthoqutrit.core.qsl import BOUND_TOL, QslReport
from orthoqutrit.core.regions import DiagramScan, SimplexPoint
from orthoqutrit.core.suites import SuiteReport

DEFAULT_TOLERANCES: dict[str, float] = {
    "angle": ANGLE_TOL,
    "classify": CLASSIFY_TOL,
    "bound": BOUND_TOL,
    "refine": DEFAULT_REFINE_TOL,
    "amplitude": DEFAULT_AMP_TOL,
    "bracket": DEFAULT_BRACKET,
}


class Metadata(BaseModel):
    tool: str = "orthoqutrit"
    version: str = __version__
    command: str
    tolerances: dict[str, float] = Field(default_factory=lambda: dict(DEFAULT_TOLERANCES))
    seed: int | None = None


class TriadModel(BaseModel):
    r1: float
    r2: float
    r3: float

    @classmethod
    def of(cls, triad: Triad) -> "TriadModel":
        return cls(r1=triad.r1, r2=triad.r2, r3=triad.r3)


class LabelModel(BaseModel):
    kind: str
    index: int | None = None
    text: str

    @classmethod
    def of(cls, label: FamilyLabel) -> "LabelModel":
        return cls(kind=label.kind.value, index=label.index, text=str(label))


class QslModel(BaseModel):
    mean_energy: float
    dispersion: float
    alpha: float
    tau_qsl: float
    tau_mt: float
    tau_ml: float
    classification: str

    @classmethod
    def of(cls, report: QslReport) -> "QslModel":
        return cls(**report.to_dict(), tau_mt=report.tau_mt, tau_ml=report.tau_ml)


class IbModel(BaseModel):
    m: int
    n: int
    parity_case: str
    pinned_index: int
    template: str
    tau: float
    times: list[float]


class BoundaryModel(BaseModel):
    qubits: list[list[int]]
    ib: IbModel | None = None

    @classmethod
    def of(cls, solutions: BoundarySolutions, count: int = 3) -> "BoundaryModel":
        ib = None
        if solutions.ib is not None:
            relation = solutions.ib.relation
            ib = IbModel(
                m=relation.m,
                n=relation.n,
                parity_case=relation.parity_case.value,
                pinned_index=solutions.ib.pinned_index,
                template=solutions.ib.template,
                tau=solutions.ib.tau,
                times=list(solutions.ib.times(count)),
            )
        return cls(qubits=[list(pair) for pair in solutions.qubits], ib=ib)


class SolveDocument(BaseModel):
    metadata: Metadata
    omega21: float
    omega32: float
    tau: float
    solution_found: bool
    family: LabelModel | None = None
    triad: TriadModel | None = None
    qsl: QslModel | None = None
    boundary: BoundaryModel | None = None


class ClassifyDocument(BaseModel):
    metadata: Metadata
    triad: TriadModel
    renormalized: bool = False
    family: LabelModel
    never_orthogonal: bool
    omega21: float | None = None
    omega32: float | None = None
    times: list[float] = Field(default_factory=list)
    time_source: str | None = None
    qsl: QslModel | None = None


class DiagramRow(BaseModel):
    omega: float
    omega21_tau: float
    cell_type: str
    r1: float | None = None
    r2: float | None = None
    r3: float | None = None
    borders: list[str] = Field(default_factory=list)
    intersection: str | None = None


class DiagramDocument(BaseModel):
    metadata: Metadata
    omega_range: tuple[float, float]
    tau_range: tuple[float, float]
    resolution: tuple[int, int]
    counts: dict[str, int]
    cells: list[DiagramRow]

    @classmethod
    def of(cls, scan: DiagramScan, metadata: Metadata) -> "DiagramDocument":
        rows = []
        for cell in scan.cells():
            r = cell.triad
            rows.append(
                DiagramRow(
                    omega=cell.Omega,
                    omega21_tau=cell.omega21_tau,
                    cell_type=cell.cell_type.value,
                    r1=r.r1 if r else None,
                    r2=r.r2 if r else None,
                    r3=r.r3 if r else None,
                    borders=sorted(kind.value for kind in cell.borders),
                    intersection=cell.intersection.value if cell.intersection else None,
                )
            )
        n_tau, n_omega = scan.shape
        return cls(
            metadata=metadata,
            omega_range=scan.omega_range,
            tau_range=scan.tau_range,
            resolution=(n_omega, n_tau),
            counts={kind.value: count for kind, count in scan.counts().items()},
            cells=rows,
        )


class SimplexRow(BaseModel):
    r1: float
    r2: float
    r3: float
    alpha: float
    alpha_class: str = Field(serialization_alias="class")
    omega: float
    family: str

    @classmethod
    def of(cls, point: SimplexPoint) -> "SimplexRow":
        return cls(
            r1=point.triad.r1,
            r2=point.triad.r2,
            r3=point.triad.r3,
            alpha=point.alpha,
            alpha_class=point.alpha_class.value,
            omega=point.Omega,
            family=point.family.value,
        )


class SimplexDocument(BaseModel):
    metadata: Metadata
    omega_samples: list[float]
    points: list[SimplexRow]


class VerifyDocument(BaseModel):
    metadata: Metadata
    suite: str
    count: int
    seed: int
    passed: int
    failed: int
    max_residual: float | None
    discrepancies: int = 0
    cases: list[dict[str, Any]]

    @classmethod
    def of(cls, report: SuiteReport, metadata: Metadata) -> "VerifyDocument":
        return cls(metadata=metadata, **report.to_dict())


def dump(document: BaseModel) -> str:
    """Serialise a document to indented JSON with a trailing newline."""
    return document.model_dump_json(indent=2, by_alias=True) + "\n"
