"""Dense complex matrix helpers and the density-matrix type."""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from .exceptions import DensityError, NumericError, SizeError, UsageError

EPS_HERM = 1e-9
EPS_TRACE = 1e-9
EPS_PSD = 1e-9

DEFAULT_MAX_DIM = 4096


def max_dim() -> int:
    """Dimension cap for Kronecker products (``ENTROSEP_MAX_DIM`` overrides)."""
    raw = os.environ.get("ENTROSEP_MAX_DIM")
    if raw is None:
        return DEFAULT_MAX_DIM
    try:
        value = int(raw)
    except ValueError as exc:
        raise UsageError(f"ENTROSEP_MAX_DIM must be an integer, got {raw!r}") from exc
    if value < 1:
        raise UsageError("ENTROSEP_MAX_DIM must be positive")
    return value


def as_matrix(m) -> np.ndarray:
    """Return ``m`` as a finite 2-D complex array (1-D input becomes a column)."""
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim == 1:
        a = a[:, None]
    if a.ndim != 2:
        raise UsageError(f"expected a matrix, got array of shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise UsageError("matrix contains NaN or Inf entries")
    return a


def kron(a, b) -> np.ndarray:
    a = as_matrix(a)
    b = as_matrix(b)
    rows = a.shape[0] * b.shape[0]
    cols = a.shape[1] * b.shape[1]
    cap = max_dim()
    if max(rows, cols) > cap:
        raise SizeError(f"kron result {rows}x{cols} exceeds dimension cap {cap}")
    return np.kron(a, b)


def spectral_norm(m) -> float:
    """Largest singular value."""
    a = as_matrix(m)
    if a.size == 0:
        return 0.0
    try:
        return float(np.linalg.svd(a, compute_uv=False)[0])
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"SVD did not converge: {exc}") from exc


@dataclass(frozen=True)
class DensityMatrix:
    """A validated density matrix; build with :func:`validate_density`.

    ``dims`` is ``(d_A, d_B)`` for bipartite states and ``None`` otherwise.
    """

    matrix: np.ndarray
    dims: tuple[int, int] | None = None

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def __array__(self, dtype=None, copy=None):
        return self.matrix if dtype is None else self.matrix.astype(dtype)


def density_report(m) -> dict[str, float]:
    """Measure every density-matrix invariant of a square matrix."""
    a = np.asarray(m, dtype=np.complex128)
    herm = float(np.max(np.abs(a - a.conj().T))) if a.size else 0.0
    trace = complex(np.trace(a))
    hermitized = (a + a.conj().T) / 2
    min_eig = float(np.linalg.eigvalsh(hermitized)[0]) if a.size else 0.0
    return {
        "hermitian": herm,
        "trace": trace.real,
        "trace_imag": trace.imag,
        "min_eigenvalue": min_eig,
    }


def validate_density(m, dims: tuple[int, int] | None = None, *, eps_herm: float = EPS_HERM,
                     eps_trace: float = EPS_TRACE, eps_psd: float = EPS_PSD) -> DensityMatrix:
    """Check Hermiticity, unit trace and positivity, then wrap ``m``.

    Raises
    ------
    DensityError
        On the first failing invariant; the exception carries the full
        measurement report so callers can show every violation at once.
    """
    if isinstance(m, DensityMatrix):
        dims = dims if dims is not None else m.dims
        m = m.matrix
    a = np.array(m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DensityError("square", float("nan"), {"shape": a.shape})
    if not np.all(np.isfinite(a)):
        raise DensityError("finite", float("nan"))
    report = density_report(a)
    if report["hermitian"] > eps_herm:
        raise DensityError("hermitian", report["hermitian"], report)
    if abs(report["trace"] - 1.0) > eps_trace or abs(report["trace_imag"]) > eps_trace:
        raise DensityError("trace", report["trace"], report)
    if report["min_eigenvalue"] < -eps_psd:
        raise DensityError("psd", report["min_eigenvalue"], report)
    if dims is not None:
        dims = (int(dims[0]), int(dims[1]))
        if dims[0] * dims[1] != a.shape[0]:
            raise UsageError(f"subsystem dims {dims} do not match matrix size {a.shape[0]}")
    a = (a + a.conj().T) / 2
    a.setflags(write=False)
    return DensityMatrix(a, dims)


def partial_trace(rho: DensityMatrix, keep) -> DensityMatrix:
    """Reduced state of subsystem ``keep`` (``"A"``/``0`` or ``"B"``/``1``)."""
    if not isinstance(rho, DensityMatrix) or rho.dims is None:
        raise UsageError("partial_trace needs a bipartite DensityMatrix with subsystem dims")
    da, db = rho.dims
    t = rho.matrix.reshape(da, db, da, db)
    if keep in ("A", "a", 0):
        red = np.einsum("ijkj->ik", t)
    elif keep in ("B", "b", 1):
        red = np.einsum("ijil->jl", t)
    else:
        raise UsageError(f"keep must be 'A' or 'B', got {keep!r}")
    red = (red + red.conj().T) / 2
    red.setflags(write=False)
    return DensityMatrix(red, None)


def partial_transpose(rho: DensityMatrix, which="B") -> np.ndarray:
    """Partial transpose on one subsystem; used as a PPT ground truth in tests."""
    if rho.dims is None:
        raise UsageError("partial_transpose needs subsystem dims")
    da, db = rho.dims
    t = rho.matrix.reshape(da, db, da, db)
    if which in ("B", 1):
        t = t.transpose(0, 3, 2, 1)
    else:
        t = t.transpose(2, 1, 0, 3)
    return t.reshape(da * db, da * db)


def purity(rho) -> float:
    a = np.asarray(rho.matrix if isinstance(rho, DensityMatrix) else rho)
    return float(np.real(np.trace(a @ a)))


def random_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary via QR with phase correction."""
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    ph = np.diag(r) / np.abs(np.diag(r))
    return q * ph


def random_density(d: int, rng: np.random.Generator, rank: int | None = None) -> DensityMatrix:
    """Random mixed state from the induced (Ginibre) measure."""
    rank = d if rank is None else rank
    g = rng.standard_normal((d, rank)) + 1j * rng.standard_normal((d, rank))
    m = g @ g.conj().T
    return validate_density(m / np.trace(m).real)
