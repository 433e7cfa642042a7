"""Named states and one-parameter families used for threshold scans."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .exceptions import DomainError, UsageError
from .linalg import DensityMatrix, kron, validate_density
from .measurements import generalized_pauli, qutrit_bases


def _check_c(c: float) -> float:
    c = float(c)
    if not 0.0 <= c <= 1.0:
        raise DomainError(f"mixing parameter c must lie in [0, 1], got {c}")
    return c


def max_entangled_phi() -> np.ndarray:
    """(|00> + |11>)/sqrt2 as a length-4 vector."""
    v = np.zeros(4, dtype=np.complex128)
    v[0] = v[3] = 1 / math.sqrt(2)
    return v


def qutrit_psi() -> np.ndarray:
    """(|z0 x0> + |z1 x2> + |z2 x1>)/sqrt3."""
    b = qutrit_bases()
    z, x = b["z"].vectors, b["x"].vectors
    return (np.kron(z[0], x[0]) + np.kron(z[1], x[2]) + np.kron(z[2], x[1])) / math.sqrt(3)


def _isotropic_mix(psi: np.ndarray, c: float, dims: tuple[int, int]) -> DensityMatrix:
    n = psi.size
    m = (1 - c) / n * np.eye(n) + c * np.outer(psi, psi.conj())
    return validate_density(m, dims)


def werner_qubit(c: float) -> DensityMatrix:
    """``(1-c)/4 I + c|Phi><Phi|``; separable exactly for ``c <= 1/3``."""
    return _isotropic_mix(max_entangled_phi(), _check_c(c), (2, 2))


def qutrit_family(c: float) -> DensityMatrix:
    """``(1-c)/9 I + c|Psi><Psi|`` for the two-qutrit state of :func:`qutrit_psi`."""
    return _isotropic_mix(qutrit_psi(), _check_c(c), (3, 3))


def qutrit_psi_relations() -> dict[str, float]:
    """Residuals of the three eigen-relations that pin the qutrit phase convention."""
    z, x = generalized_pauli(3)
    psi = qutrit_psi()
    w = np.exp(2j * np.pi / 3)
    return {
        "ZxX": float(np.linalg.norm(np.kron(z, x) @ psi - psi)),
        "XxZ": float(np.linalg.norm(np.kron(x, z) @ psi - psi)),
        "ZXxZX": float(np.linalg.norm(np.kron(z @ x, z @ x) @ psi - w * psi)),
    }


def product_mixture(components) -> DensityMatrix:
    """Convex combination ``sum_l w_l rho_A,l (x) rho_B,l``.

    ``components`` is an iterable of ``(weight, rho_a, rho_b)``; the local
    states may be matrices, :class:`DensityMatrix` objects or kets.
    """
    comps = list(components)
    if not comps:
        raise UsageError("product_mixture needs at least one component")
    weights = np.array([float(w) for w, _, _ in comps])
    if weights.min() < 0 or abs(weights.sum() - 1) > 1e-9:
        raise UsageError(f"weights must be nonnegative and sum to 1, got sum {weights.sum()!r}")
    total = None
    dims = None
    for w, ra, rb in comps:
        a, b = _as_local(ra), _as_local(rb)
        if dims is None:
            dims = (a.shape[0], b.shape[0])
        elif dims != (a.shape[0], b.shape[0]):
            raise UsageError("components have mismatched local dimensions")
        term = w * kron(a, b)
        total = term if total is None else total + term
    return validate_density(total, dims)


def _as_local(r) -> np.ndarray:
    if isinstance(r, DensityMatrix):
        return r.matrix
    a = np.asarray(r, dtype=np.complex128)
    if a.ndim == 1:
        return np.outer(a, a.conj())
    return a


def haar_ket(d: int, rng: np.random.Generator) -> np.ndarray:
    z = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return z / np.linalg.norm(z)


def random_separable(rng: np.random.Generator, dims: tuple[int, int] = (2, 2),
                     max_components: int = 16) -> DensityMatrix:
    """Mixture of Haar-random pure product states with Dirichlet weights."""
    n = int(rng.integers(1, max_components + 1))
    weights = rng.dirichlet(np.ones(n))
    weights = weights / weights.sum()
    return product_mixture(
        (w, haar_ket(dims[0], rng), haar_ket(dims[1], rng)) for w in weights)


@dataclass(frozen=True)
class StateFamily:
    name: str
    dims: tuple[int, int]
    parameter_name: str
    generator: Callable[[float], DensityMatrix]
    separability_limit: float | None = None

    def __call__(self, c: float) -> DensityMatrix:
        return self.generator(c)


WERNER_QUBIT = StateFamily("werner-qubit", (2, 2), "c", werner_qubit, 1 / 3)
QUTRIT_FAMILY = StateFamily("qutrit", (3, 3), "c", qutrit_family, 1 / 4)

FAMILIES = {f.name: f for f in (WERNER_QUBIT, QUTRIT_FAMILY)}
