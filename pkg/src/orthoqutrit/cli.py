from __future__ import annotations

from enum import Enum
import logging
import math
from pathlib import Path
import sys
import time
from typing import Any, List, Optional

import click
import numpy as np
import typer
from dotenv import load_dotenv

app = typer.Typer(add_completion=False, help="Orthogonality times and speed limits of three-level systems.")

logger = logging.getLogger("orthoqutrit.cli")

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NO_SOLUTION = 2


class OutputFormat(str, Enum):
    json = "json"
    csv = "csv"
    svg = "svg"


def _load_env() -> None:
    load_dotenv()


def _setup_logging():
    """Configure centralized logging to stderr and log files."""
    from orthoqutrit.core.config import Settings
    from orthoqutrit.core.logging_config import setup_logging

    settings = Settings.from_env()
    setup_logging(log_dir=settings.log_dir, log_level=settings.log_level, clear_on_launch=settings.clear_logs_on_launch)
    return settings


def _emit(text: str, out: Optional[Path]) -> None:
    if out is None:
        typer.echo(text, nl=False)
        return
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(text, encoding="utf-8")
    logger.info("Wrote %s (%d bytes)", out, len(text))


def _finish(command: str, params: dict[str, Any], started: float, exit_code: int, error: str | None = None) -> None:
    from orthoqutrit.core.logging_config import log_run

    log_run(command, params, exit_code, duration_ms=(time.monotonic() - started) * 1000.0, error=error)
    if error:
        typer.echo(f"Error: {error}", err=True)
    if exit_code != EXIT_OK:
        raise typer.Exit(exit_code)


def _check_format(fmt: OutputFormat, allowed: tuple[OutputFormat, ...]) -> str | None:
    if fmt in allowed:
        return None
    return f"--format {fmt.value} is not available here (use {' or '.join(a.value for a in allowed)})"


# ── solve ────────────────────────────────────────────────────


@app.command()
def solve(
    omega21: float = typer.Option(..., "--omega21", help="Lower level spacing E2 - E1"),
    omega32: float = typer.Option(..., "--omega32", help="Upper level spacing E3 - E2"),
    tau: float = typer.Option(..., "--tau", help="Orthogonality time (radians / frequency)"),
    fmt: OutputFormat = typer.Option(OutputFormat.json, "--format", help="json or csv"),
    count: int = typer.Option(3, "--count", min=1, help="Times listed for Family-I results"),
    angle_tol: float = typer.Option(1e-6, "--angle-tol", help="Band around multiples of pi treated as boundary angles"),
    out: Optional[Path] = typer.Option(None, "--out", help="Write to this file instead of stdout"),
) -> None:
    """Triad orthogonal at tau, its family and its speed-limit report."""
    _load_env()
    _setup_logging()
    started = time.monotonic()
    params = {"omega21": omega21, "omega32": omega32, "tau": tau, "format": fmt.value}

    from orthoqutrit.core.errors import BoundaryCaseError
    from orthoqutrit.core.evolution import Spectrum
    from orthoqutrit.core.families import (
        FamilyKind,
        FamilyLabel,
        classify_triad,
        family2_triad,
        qubit_triad,
        resolve_boundary,
    )
    from orthoqutrit.core.qsl import qsl_report
    from orthoqutrit.exporters.records import (
        BoundaryModel,
        LabelModel,
        Metadata,
        QslModel,
        SolveDocument,
        TriadModel,
        dump,
    )
    from orthoqutrit.exporters.tabular import solve_csv

    problem = _check_format(fmt, (OutputFormat.json, OutputFormat.csv))
    if problem:
        _finish("solve", params, started, EXIT_ERROR, problem)

    document = SolveDocument(
        metadata=Metadata(command="solve"),
        omega21=omega21,
        omega32=omega32,
        tau=tau,
        solution_found=False,
    )
    try:
        spectrum = Spectrum(omega21, omega32)
        boundary = resolve_boundary(spectrum, tau, angle_tol=angle_tol)
        triad = None
        if boundary.empty:
            try:
                triad = family2_triad(spectrum, tau)
            except BoundaryCaseError as exc:
                logger.info("Boundary angle without Family-I solution at tau=%r: %s", tau, exc)

        if triad is not None:
            document.solution_found = True
            document.family = LabelModel.of(classify_triad(triad))
            document.triad = TriadModel.of(triad)
            document.qsl = QslModel.of(qsl_report(triad, spectrum))
        elif not boundary.empty:
            document.solution_found = True
            document.boundary = BoundaryModel.of(boundary, count)
            if boundary.ib is not None:
                document.family = LabelModel.of(FamilyLabel(FamilyKind.I_B, boundary.ib.pinned_index))
            else:
                qubit = qubit_triad(boundary.qubits[0])
                document.family = LabelModel.of(classify_triad(qubit))
                document.triad = TriadModel.of(qubit)
                document.qsl = QslModel.of(qsl_report(qubit, spectrum))
    except ValueError as exc:
        _finish("solve", params, started, EXIT_ERROR, str(exc))

    _emit(dump(document) if fmt is OutputFormat.json else solve_csv(document), out)
    if not document.solution_found:
        typer.echo("No solution: no orthogonal triad exists at this tau", err=True)
    _finish("solve", params, started, EXIT_OK if document.solution_found else EXIT_NO_SOLUTION)


# ── classify ─────────────────────────────────────────────────


@app.command()
def classify(
    r1: float = typer.Option(..., "--r1"),
    r2: float = typer.Option(..., "--r2"),
    r3: float = typer.Option(..., "--r3"),
    omega21: Optional[float] = typer.Option(None, "--omega21", help="With --omega32, list orthogonality times"),
    omega32: Optional[float] = typer.Option(None, "--omega32"),
    count: int = typer.Option(3, "--count", min=1, help="Number of orthogonality times"),
    fmt: OutputFormat = typer.Option(OutputFormat.json, "--format", help="json or csv"),
    out: Optional[Path] = typer.Option(None, "--out", help="Write to this file instead of stdout"),
) -> None:
    """Family of a triad, plus its orthogonality times for a given spectrum."""
    _load_env()
    _setup_logging()
    started = time.monotonic()
    params = {"r": [r1, r2, r3], "omega21": omega21, "omega32": omega32, "count": count}

    from orthoqutrit.core.evolution import Spectrum, Triad
    from orthoqutrit.core.families import (
        FamilyKind,
        classify_triad,
        detect_rational_relation,
        family1_qubit_times,
        family1b_solutions,
    )
    from orthoqutrit.core.oracle import orthogonality_times
    from orthoqutrit.core.qsl import qsl_report
    from orthoqutrit.exporters.records import ClassifyDocument, LabelModel, Metadata, QslModel, TriadModel, dump
    from orthoqutrit.exporters.tabular import classify_csv

    problem = _check_format(fmt, (OutputFormat.json, OutputFormat.csv))
    if problem:
        _finish("classify", params, started, EXIT_ERROR, problem)
    if (omega21 is None) != (omega32 is None):
        _finish("classify", params, started, EXIT_ERROR, "--omega21 and --omega32 must be given together")

    try:
        if min(r1, r2, r3) < 0.0:
            raise ValueError("probabilities must be non-negative")
        total = math.fsum((r1, r2, r3))
        renormalized = abs(total - 1.0) > 1e-9
        if renormalized:
            logger.warning("Triad sums to %r; renormalizing", total)
            typer.echo(f"Warning: triad sums to {total!r}; renormalized", err=True)
        triad = Triad.normalized(r1, r2, r3)
        label = classify_triad(triad)
        spectrum = Spectrum(omega21, omega32) if omega21 is not None else None

        times: tuple[float, ...] = ()
        source = None
        if spectrum is not None and label.kind is FamilyKind.I_QUBIT:
            times, source = family1_qubit_times(label.qubit_pair, spectrum, count).times, "analytic"
        elif spectrum is not None and label.kind is FamilyKind.I_B:
            relation = detect_rational_relation(spectrum)
            if relation is not None and relation.parity_case.pinned_index == label.index:
                times, source = family1b_solutions(relation, spectrum).times(count), "analytic"
        elif spectrum is not None and label.kind is FamilyKind.II:
            times, source = orthogonality_times(triad, spectrum, count=count), "oracle"
        # a family that can reach orthogonality may still have no time for this spectrum
        never = not label.can_reach_orthogonality or (spectrum is not None and not times)
        if never and label.can_reach_orthogonality:
            logger.info("No orthogonality time for %s with %s", label, spectrum)

        document = ClassifyDocument(
            metadata=Metadata(command="classify"),
            triad=TriadModel.of(triad),
            renormalized=renormalized,
            family=LabelModel.of(label),
            never_orthogonal=never,
            omega21=omega21,
            omega32=omega32,
            times=list(times),
            time_source=source,
            qsl=(
                QslModel.of(qsl_report(triad, spectrum))
                if spectrum is not None and label.kind is not FamilyKind.STATIONARY
                else None
            ),
        )
    except ValueError as exc:
        _finish("classify", params, started, EXIT_ERROR, str(exc))

    _emit(dump(document) if fmt is OutputFormat.json else classify_csv(document), out)
    if document.never_orthogonal:
        suffix = " for this spectrum" if label.can_reach_orthogonality else ""
        typer.echo(f"{label}: never orthogonal{suffix}", err=True)
        _finish("classify", params, started, EXIT_NO_SOLUTION)
    _finish("classify", params, started, EXIT_OK)


# ── scan ─────────────────────────────────────────────────────


@app.command()
def scan(
    diagram: bool = typer.Option(False, "--diagram", help="Solution diagram over (Omega, omega21*tau)"),
    simplex: bool = typer.Option(False, "--simplex", help="Speed-limit map of the orthogonality simplex"),
    omega_min: float = typer.Option(0.0, "--omega-min"),
    omega_max: float = typer.Option(6.0, "--omega-max"),
    tau_min: float = typer.Option(0.0, "--tau-min", help="Lower omega21*tau bound"),
    tau_max: float = typer.Option(math.pi, "--tau-max", help="Upper omega21*tau bound"),
    res: int = typer.Option(200, "--res", min=1, help="Diagram cells per axis"),
    omega_samples: int = typer.Option(50, "--omega-samples", min=1, help="Simplex: number of Omega values"),
    omega: Optional[List[float]] = typer.Option(None, "--omega", help="Simplex: explicit Omega values"),
    tau_res: int = typer.Option(40, "--tau-res", min=1, help="Simplex: samples per stripe and per edge"),
    max_index: int = typer.Option(64, "--max-index", min=0, help="Largest l, l' for intersection markers"),
    fmt: OutputFormat = typer.Option(OutputFormat.svg, "--format", help="svg, csv or json"),
    out: Optional[Path] = typer.Option(None, "--out", help="Write to this file instead of stdout"),
) -> None:
    """Scan the solution diagram or the simplex and export it."""
    _load_env()
    settings = _setup_logging()
    started = time.monotonic()
    params = {
        "diagram": diagram,
        "simplex": simplex,
        "omega": [omega_min, omega_max],
        "tau": [tau_min, tau_max],
        "res": res,
        "format": fmt.value,
    }

    from orthoqutrit.core.regions import scan_diagram, scan_simplex
    from orthoqutrit.exporters.records import DiagramDocument, Metadata, SimplexDocument, SimplexRow, dump
    from orthoqutrit.exporters.svg import diagram_svg, simplex_svg
    from orthoqutrit.exporters.tabular import diagram_csv, simplex_csv

    if diagram == simplex:
        _finish("scan", params, started, EXIT_ERROR, "choose exactly one of --diagram or --simplex")

    try:
        if diagram:
            result = scan_diagram(
                (omega_min, omega_max),
                (tau_min, tau_max),
                res,
                max_index=max_index,
                workers=settings.threads,
            )
            if fmt is OutputFormat.svg:
                text = diagram_svg(result)
            elif fmt is OutputFormat.csv:
                text = diagram_csv(result)
            else:
                text = dump(DiagramDocument.of(result, Metadata(command="scan --diagram")))
        else:
            if omega:
                samples = [float(w) for w in omega]
            else:
                if not 0.0 <= omega_min < omega_max:
                    raise ValueError("--omega-min must be >= 0 and below --omega-max")
                step = (omega_max - omega_min) / omega_samples
                samples = [float(w) for w in omega_min + (np.arange(omega_samples) + 0.5) * step]
            points = scan_simplex(samples, tau_res)
            if fmt is OutputFormat.svg:
                text = simplex_svg(points)
            elif fmt is OutputFormat.csv:
                text = simplex_csv(points)
            else:
                text = dump(
                    SimplexDocument(
                        metadata=Metadata(command="scan --simplex"),
                        omega_samples=samples,
                        points=[SimplexRow.of(p) for p in points],
                    )
                )
    except ValueError as exc:
        _finish("scan", params, started, EXIT_ERROR, str(exc))

    _emit(text, out)
    _finish("scan", params, started, EXIT_OK)


# ── verify ───────────────────────────────────────────────────


class Suite(str, Enum):
    analytic = "analytic"
    random = "random"


@app.command()
def verify(
    suite: Suite = typer.Option(Suite.analytic, "--suite", help="analytic or random"),
    count: int = typer.Option(100, "--count", min=1, help="Number of generated cases"),
    seed: int = typer.Option(0, "--seed", help="Seed for case generation"),
    out: Optional[Path] = typer.Option(None, "--out", help="Write the JSON report to this file"),
) -> None:
    """Cross-check the analytic solvers against the oracle; nonzero exit on any failure."""
    _load_env()
    settings = _setup_logging()
    started = time.monotonic()
    params = {"suite": suite.value, "count": count, "seed": seed}

    from orthoqutrit.core.suites import run_suite
    from orthoqutrit.exporters.records import Metadata, VerifyDocument, dump

    try:
        report = run_suite(suite.value, count, seed, workers=settings.threads)
    except ValueError as exc:
        _finish("verify", params, started, EXIT_ERROR, str(exc))

    _emit(dump(VerifyDocument.of(report, Metadata(command=f"verify --suite {suite.value}", seed=seed))), out)
    typer.echo(f"{report.passed}/{report.count} passed, max residual {report.max_residual}", err=True)
    _finish("verify", params, started, EXIT_OK if report.ok else EXIT_ERROR)


# ── table / version ──────────────────────────────────────────


@app.command()
def table(
    omega21: float = typer.Option(..., "--omega21"),
    omega32: float = typer.Option(..., "--omega32"),
    count: int = typer.Option(3, "--count", min=1, help="Times listed per family"),
    out: Optional[Path] = typer.Option(None, "--out", help="Write to this file instead of stdout"),
) -> None:
    """Markdown table of every family and its orthogonality times."""
    _load_env()
    _setup_logging()
    started = time.monotonic()
    params = {"omega21": omega21, "omega32": omega32, "count": count}

    from orthoqutrit.core.evolution import Spectrum
    from orthoqutrit.core.templates import classification_table

    try:
        text = classification_table(Spectrum(omega21, omega32), count=count)
    except ValueError as exc:
        _finish("table", params, started, EXIT_ERROR, str(exc))

    _emit(text, out)
    _finish("table", params, started, EXIT_OK)


@app.command()
def version() -> None:
    from orthoqutrit import __version__

    typer.echo(__version__)


def main(argv: Optional[List[str]] = None) -> None:
    """Console entry point; usage errors exit with 1, leaving 2 for "no solution"."""
    try:
        code = app(args=argv, prog_name="orthoqutrit", standalone_mode=False)
    except click.exceptions.Abort:
        typer.echo("Aborted!", err=True)
        sys.exit(EXIT_ERROR)
    except click.ClickException as exc:
        exc.show()
        sys.exit(EXIT_ERROR)
    sys.exit(code or EXIT_OK)


if __name__ == "__main__":
    main()
