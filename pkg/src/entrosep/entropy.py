"""Probability vectors, cyclic convolution, Rényi/Tsallis entropies, majorization.

Orders are plain floats; ``math.inf`` (exported as :data:`INFINITY`) stands
for the min-entropy limit. Orders within :data:`SHANNON_WINDOW` of one are
evaluated with the Shannon formula.
"""

from __future__ import annotations

import math

import numpy as np

from . import _kernels
from .exceptions import DomainError, UsageError

INFINITY = math.inf
EPS_P = 1e-9
SHANNON_WINDOW = 1e-7
EPS_MAJ = 1e-9


def check_order(alpha: float, allow_inf: bool = True) -> float:
    alpha = float(alpha)
    if math.isnan(alpha) or alpha <= 0:
        raise DomainError(f"entropy order must be positive, got {alpha}")
    if math.isinf(alpha) and not allow_inf:
        raise UsageError("infinite order is not supported here")
    return alpha


def is_shannon(alpha: float) -> bool:
    return abs(alpha - 1.0) < SHANNON_WINDOW


def as_probability(p, tol: float = EPS_P) -> np.ndarray:
    """Validate a probability vector.

    Entries in ``[-tol, 0)`` are clamped to zero and the vector is
    renormalized; anything more negative, or a total off by more than
    ``tol``, is rejected.
    """
    a = np.array(p, dtype=np.float64).ravel()
    if a.size == 0:
        raise UsageError("empty probability vector")
    if not np.all(np.isfinite(a)):
        raise UsageError("probability vector has non-finite entries")
    if a.min() < -tol:
        raise UsageError(f"negative probability {a.min():.3e}")
    total = a.sum()
    if abs(total - 1.0) > tol:
        raise UsageError(f"probabilities sum to {total!r}, not 1")
    a[a < 0] = 0.0
    return a / a.sum()


def convolve(g, h) -> np.ndarray:
    """Cyclic convolution ``(g*h)_k = sum_i g_i h_{(k-i) mod D}``.

    Accepts any real vectors of equal length, so unnormalized positive
    functions can be convolved as well as probability vectors.
    """
    g = np.asarray(g, dtype=np.float64).ravel()
    h = np.asarray(h, dtype=np.float64).ravel()
    if g.shape != h.shape:
        raise UsageError(f"convolution needs equal lengths, got {g.size} and {h.size}")
    return _kernels.convolve(g, h)


def circulant(q) -> np.ndarray:
    """Matrix ``T`` with ``T[i, j] = q[(i - j) mod D]``, so ``T @ p == convolve(p, q)``."""
    q = np.asarray(q, dtype=np.float64).ravel()
    d = q.size
    return q[(np.arange(d)[:, None] - np.arange(d)[None, :]) % d]


def norm_alpha(p, alpha: float) -> float:
    """``(sum p_i^alpha)^(1/alpha)``; the maximal entry for ``alpha = inf``."""
    alpha = check_order(alpha)
    p = np.asarray(p, dtype=np.float64).ravel()
    if p.min(initial=0.0) < -EPS_P:
        raise UsageError("norm_alpha needs a nonnegative vector")
    if math.isinf(alpha):
        return float(p.max())
    return _kernels.power_sum(p, alpha) ** (1.0 / alpha)


def shannon(p) -> float:
    return _kernels.shannon_sum(as_probability(p))


def renyi(p, alpha: float) -> float:
    """Rényi entropy in nats."""
    alpha = check_order(alpha)
    p = as_probability(p)
    if math.isinf(alpha):
        return float(-math.log(p.max()))
    if is_shannon(alpha):
        return _kernels.shannon_sum(p)
    return math.log(_kernels.power_sum(p, alpha)) / (1.0 - alpha)


def tsallis(p, alpha: float) -> float:
    alpha = check_order(alpha, allow_inf=False)
    p = as_probability(p)
    if is_shannon(alpha):
        return _kernels.shannon_sum(p)
    return (_kernels.power_sum(p, alpha) - 1.0) / (1.0 - alpha)


def entropy(p, alpha: float, kind: str = "renyi") -> float:
    """Dispatch on ``kind`` (``"renyi"`` or ``"tsallis"``)."""
    if kind == "renyi":
        return renyi(p, alpha)
    if kind == "tsallis":
        return tsallis(p, alpha)
    raise UsageError(f"unknown entropy kind {kind!r}")


def alpha_log(xi: float, alpha: float) -> float:
    """Deformed logarithm ``(xi^(1-alpha) - 1) / (1 - alpha)``."""
    alpha = check_order(alpha, allow_inf=False)
    xi = float(xi)
    if not xi > 0:
        raise DomainError(f"alpha_log needs a positive argument, got {xi}")
    if is_shannon(alpha):
        return math.log(xi)
    return (xi ** (1.0 - alpha) - 1.0) / (1.0 - alpha)


def _pad(a: np.ndarray, n: int) -> np.ndarray:
    return np.concatenate([a, np.zeros(n - a.size)])


def majorizes(a, b, tol: float = EPS_MAJ) -> bool:
    """True iff ``a`` is majorized by ``b`` (``a ≺ b``).

    Shorter vectors are padded with zeros. Partial sums are compared with
    tolerance ``tol`` so exact ties count as satisfied.
    """
    a = np.asarray(a, dtype=np.float64).ravel()
    b = np.asarray(b, dtype=np.float64).ravel()
    n = max(a.size, b.size)
    a = np.sort(_pad(a, n))[::-1]
    b = np.sort(_pad(b, n))[::-1]
    if abs(a.sum() - b.sum()) > tol:
        raise UsageError(f"majorization needs equal totals, got {a.sum()!r} and {b.sum()!r}")
    return bool(np.all(np.cumsum(a) <= np.cumsum(b) + tol))
