"""Exception hierarchy shared by all entrosep modules."""

from __future__ import annotations


class EntrosepError(Exception):
    """Base class for every error raised by this package."""


class UsageError(EntrosepError, ValueError):
    """Arguments are structurally wrong (mismatched sizes, bad parameters)."""


class DomainError(EntrosepError, ValueError):
    """A numeric argument lies outside the domain of the function."""


class UnsupportedError(EntrosepError, ValueError):
    """The request is well formed but outside what is implemented."""


class SizeError(EntrosepError, ValueError):
    """A requested array would exceed the configured dimension cap."""


class NumericError(EntrosepError, ArithmeticError):
    """A numerical routine (e.g. an SVD) failed to converge."""


class DensityError(EntrosepError, ValueError):
    """A matrix fails one of the density-matrix invariants.

    ``invariant`` names the first failing check (``"square"``, ``"finite"``,
    ``"hermitian"``, ``"trace"`` or ``"psd"``), ``value`` is the offending
    measured quantity and ``report`` maps every check to its measured value.
    """

    def __init__(self, invariant: str, value: float, report: dict | None = None):
        self.invariant = invariant
        self.value = float(value)
        self.report = dict(report or {})
        super().__init__(f"density matrix violates {invariant!r} (measured {value:.3e})")


class ScanError(EntrosepError):
    """Threshold scan could not proceed; ``trace`` holds the pre-scan grid."""

    def __init__(self, message: str, trace: list[tuple[float, float]] | None = None):
        self.trace = list(trace or [])
        super().__init__(message)


class SchemaError(EntrosepError, ValueError):
    """Input file does not follow the JSON schema."""

    def __init__(self, message: str, source: str = "<input>", line: int | None = None,
                 path: str | None = None):
        self.source = source
        self.line = line
        self.path = path
        where = source if line is None else f"{source}:{line}"
        if path:
            where = f"{where} at {path}"
        super().__init__(f"{where}: {message}")
