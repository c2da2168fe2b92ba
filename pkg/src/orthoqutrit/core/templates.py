"""Template loader for the markdown reports.

Loads markdown templates from the repo-root ``templates/`` directory and
renders them with Python ``str.format()`` placeholders.
"""
from __future__ import annotations

import logging
import os
from functools import lru_cache

from orthoqutrit.core.evolution import PAIRS, Spectrum
from orthoqutrit.core.families import (
    DEFAULT_MAX_DENOMINATOR,
    ParityCase,
    detect_rational_relation,
    family1_qubit_times,
    family1b_solutions,
)
from orthoqutrit.core.qsl import edge_crossover
from orthoqutrit.core.regions import stripes_at, tau_min

logger = logging.getLogger("orthoqutrit.templates")

# templates/ lives at the repo root: orthoqutrit/templates/
# This file lives at:                orthoqutrit/src/orthoqutrit/core/templates.py
_THIS_DIR = os.path.dirname(os.path.abspath(__file__))
_TEMPLATES_DIR = os.path.normpath(os.path.join(_THIS_DIR, "..", "..", "..", "templates"))

_IB_ROWS = (
    (ParityCase.N_ODD_M_EVEN, "{1/2, r, 1/2-r}"),
    (ParityCase.N_EVEN_M_ODD, "{r, 1/2-r, 1/2}"),
    (ParityCase.N_ODD_M_ODD, "{r, 1/2, 1/2-r}"),
)


@lru_cache(maxsize=8)
def _read_template(name: str) -> str:
    """Read a raw template file and return its contents (cached)."""
    path = os.path.join(_TEMPLATES_DIR, f"{name}.md")
    if not os.path.isfile(path):
        raise FileNotFoundError(f"Template not found: {path}")
    with open(path, "r", encoding="utf-8") as f:
        return f.read()


def load_template(name: str, **kwargs: str) -> str:
    """Load a template by name and substitute its ``{placeholder}`` fields."""
    return _read_template(name).format(**kwargs)


def _fmt(value: float) -> str:
    return f"{value:.6g}"


def _times(values) -> str:
    return ", ".join(_fmt(v) for v in values)


def _ib_alpha(pinned: int, Omega: float) -> str:
    if pinned == 1:
        return "> 1 (ML)"
    if pinned == 3:
        return "< 1 (MT)"
    crossover = edge_crossover(Omega)
    if crossover is None:
        return "< 1 (MT), since Ω <= 1"
    return f"< 1 for r < {_fmt(crossover)}, > 1 for r > {_fmt(crossover)}"


def classification_table(
    spectrum: Spectrum,
    count: int = 3,
    max_denominator: int = DEFAULT_MAX_DENOMINATOR,
) -> str:
    """Render every family with the orthogonality times it has for ``spectrum``."""
    Omega = spectrum.Omega
    relation = detect_rational_relation(spectrum, max_denominator=max_denominator)

    qubit_rows = []
    qubit_firsts = []
    for i, j in PAIRS:
        times = family1_qubit_times((i, j), spectrum, count).times
        qubit_firsts.append((times[0], f"R{i}{j}"))
        triad = ["1/2", "1/2", "1/2"]
        triad[({1, 2, 3} - {i, j}).pop() - 1] = "0"
        qubit_rows.append(
            f"| I-qubit | {{{', '.join(triad)}}} | {_times(times)} (nπ/ω{i}{j}, n odd) | always | 1 (EQUAL) |"
        )

    ib_rows = []
    ib_solution = family1b_solutions(relation, spectrum) if relation is not None else None
    for case, template in _IB_ROWS:
        applies = ib_solution is not None and relation.parity_case is case
        times = _times(ib_solution.times(count)) if applies else "-"
        ib_rows.append(
            f"| I-b ({case.value}) | {template}, 0 < r < 1/2 | {times} | "
            f"{'yes' if applies else 'no'} | {_ib_alpha(case.pinned_index, Omega)} |"
        )

    stripes = stripes_at(Omega)
    stripe_rows = [
        f"- l = {s.l} ({s.regime.value}): {_fmt(s.lower)} < ω21τ < {_fmt(s.upper)}, "
        f"i.e. {_fmt(s.lower / spectrum.omega21)} < τ < {_fmt(s.upper / spectrum.omega21)}"
        for s in stripes
    ]
    family2_times = (
        f"{_fmt(stripes[0].lower / spectrum.omega21)} < τ < {_fmt(stripes[0].upper / spectrum.omega21)}"
        if stripes
        else "-"
    )

    ordered = sorted(qubit_firsts)
    qubit_order = " < ".join(f"{name} ({_fmt(t)})" for t, name in ordered)

    logger.debug("Rendering classification table for %s", spectrum)
    return load_template(
        "classification_table",
        omega21=_fmt(spectrum.omega21),
        omega32=_fmt(spectrum.omega32),
        Omega=_fmt(Omega),
        tau_min=_fmt(tau_min(spectrum)),
        relation=(
            f"Ω = {relation.m}/{relation.n} ({relation.parity_case.value})"
            if relation is not None
            else f"none with denominator <= {max_denominator}"
        ),
        count=str(count),
        qubit_rows="\n".join(qubit_rows),
        ib_rows="\n".join(ib_rows),
        family2_times=family2_times,
        family2_applies="yes" if stripes else "no",
        stripe_rows="\n".join(stripe_rows) if stripe_rows else "- none",
        qubit_order=qubit_order,
    )
