"""Domain errors.

All of them are ``ValueError`` subclasses so callers that only care about
"bad input" can catch the built-in type.
"""
from __future__ import annotations


class InvalidInputError(ValueError):
    """A triad, spectrum, time or index argument violates its invariants."""


class BoundaryCaseError(ValueError):
    """Some ω_ij·τ sits on a multiple of π, outside the Family-II formula.

    ``pairs`` lists the offending level pairs ``(i, j)`` with ``i > j``.
    """

    def __init__(self, pairs: tuple[tuple[int, int], ...], message: str | None = None) -> None:
        self.pairs = pairs
        names = ", ".join(f"ω{i}{j}τ" for i, j in pairs)
        super().__init__(
            message
            or f"{names} at a multiple of π; use the Family-I solvers (resolve_boundary)"
        )


class DegenerateInputError(ValueError):
    """cos ωτ = 1 in the equally-spaced formula."""


class OutOfDomainError(ValueError):
    """Free parameter outside the open interval where a closed form holds."""


class StationaryStateError(ValueError):
    """The triad has a single populated level; it never leaves its initial state."""


class ZeroSearchConfigError(ValueError):
    """The oracle's search configuration cannot resolve the fastest oscillation."""
