"""Hot numeric kernels with a numba path and a pure-numpy path.

The numba versions are compiled on first use. Set ``ENTROSEP_NUMBA=0`` before
import to force the numpy versions everywhere (useful for debugging and on
platforms without numba). Both variants are always importable through
:data:`NUMPY_KERNELS` and :data:`NUMBA_KERNELS` so they can be benchmarked and
cross-checked against each other.
"""

from __future__ import annotations

import itertools
import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and os.environ.get("ENTROSEP_NUMBA", "1").lower() not in (
    "0", "false", "no", "off")


# --------------------------------------------------------------------------
# numpy implementations
# --------------------------------------------------------------------------

def convolve_np(g, h):
    d = g.shape[0]
    # circulant matrix T[k, i] = h[(k - i) mod d]
    idx = (np.arange(d)[:, None] - np.arange(d)[None, :]) % d
    return h[idx] @ g


def power_sum_np(p, alpha):
    nz = p[p > 0.0]
    return float(np.sum(nz ** alpha))


def shannon_sum_np(p):
    nz = p[p > 0.0]
    return float(-np.sum(nz * np.log(nz)))


def submatrix_profile_np(v):
    """Largest spectral norm per class k = r + r' - 1, batched per (r, r')."""
    n_rows, n_cols = v.shape
    out = np.zeros(n_rows + n_cols - 1)
    for r in range(1, n_rows + 1):
        row_sets = np.array(list(itertools.combinations(range(n_rows), r)))
        for rc in range(1, n_cols + 1):
            col_sets = np.array(list(itertools.combinations(range(n_cols), rc)))
            subs = v[row_sets[:, None, :, None], col_sets[None, :, None, :]]
            sv = np.linalg.svd(subs.reshape(-1, r, rc), compute_uv=False)
            k = r + rc - 2
            out[k] = max(out[k], float(sv[:, 0].max()))
    return out


def convolution_elements_np(na, nb):
    n_out, da, _ = na.shape
    db = nb.shape[1]
    idx = (np.arange(n_out)[:, None] - np.arange(n_out)[None, :]) % n_out
    shifted = nb[idx]  # shifted[k, i] = nb[(k - i) mod D]
    pi = np.einsum("iab,kicd->kacbd", na, shifted)
    return pi.reshape(n_out, da * db, da * db)


# --------------------------------------------------------------------------
# numba implementations
# --------------------------------------------------------------------------

def _convolve_loop(g, h):
    d = g.shape[0]
    out = np.zeros(d)
    for k in range(d):
        acc = 0.0
        for i in range(d):
            acc += g[i] * h[(k - i) % d]
        out[k] = acc
    return out


def _power_sum_loop(p, alpha):
    acc = 0.0
    for x in p:
        if x > 0.0:
            acc += x ** alpha
    return acc


def _shannon_sum_loop(p):
    acc = 0.0
    for x in p:
        if x > 0.0:
            acc -= x * np.log(x)
    return acc


def _submatrix_profile_loop(v):
    n_rows, n_cols = v.shape
    out = np.zeros(n_rows + n_cols - 1)
    rows = np.empty(n_rows, dtype=np.int64)
    cols = np.empty(n_cols, dtype=np.int64)
    for rmask in range(1, 1 << n_rows):
        r = 0
        for i in range(n_rows):
            if rmask >> i & 1:
                rows[r] = i
                r += 1
        for cmask in range(1, 1 << n_cols):
            c = 0
            for j in range(n_cols):
                if cmask >> j & 1:
                    cols[c] = j
                    c += 1
            sub = np.empty((r, c), dtype=np.complex128)
            for a in range(r):
                for b in range(c):
                    sub[a, b] = v[rows[a], cols[b]]
            sv = np.linalg.svd(sub)[1]
            k = r + c - 2
            if sv[0] > out[k]:
                out[k] = sv[0]
    return out


def _convolution_elements_loop(na, nb):
    n_out, da, _ = na.shape
    db = nb.shape[1]
    pi = np.zeros((n_out, da * db, da * db), dtype=np.complex128)
    for k in range(n_out):
        for i in range(n_out):
            j = (k - i) % n_out
            for a in range(da):
                for b in range(da):
                    x = na[i, a, b]
                    if x == 0:
                        continue
                    for c in range(db):
                        for e in range(db):
                            pi[k, a * db + c, b * db + e] += x * nb[j, c, e]
    return pi


if HAVE_NUMBA:
    convolve_nb = njit(cache=True)(_convolve_loop)
    power_sum_nb = njit(cache=True)(_power_sum_loop)
    shannon_sum_nb = njit(cache=True)(_shannon_sum_loop)
    submatrix_profile_nb = njit(cache=True)(_submatrix_profile_loop)
    convolution_elements_nb = njit(cache=True)(_convolution_elements_loop)
else:  # pragma: no cover
    convolve_nb = _convolve_loop
    power_sum_nb = _power_sum_loop
    shannon_sum_nb = _shannon_sum_loop
    submatrix_profile_nb = _submatrix_profile_loop
    convolution_elements_nb = _convolution_elements_loop


NUMPY_KERNELS = {
    "convolve": convolve_np,
    "power_sum": power_sum_np,
    "shannon_sum": shannon_sum_np,
    "submatrix_profile": submatrix_profile_np,
    "convolution_elements": convolution_elements_np,
}

NUMBA_KERNELS = {
    "convolve": convolve_nb,
    "power_sum": power_sum_nb,
    "shannon_sum": shannon_sum_nb,
    "submatrix_profile": submatrix_profile_nb,
    "convolution_elements": convolution_elements_nb,
}

_active = NUMBA_KERNELS if USE_NUMBA else NUMPY_KERNELS


def backend() -> str:
    return "numba" if _active is NUMBA_KERNELS else "numpy"


def convolve(g: np.ndarray, h: np.ndarray) -> np.ndarray:
    return _active["convolve"](np.ascontiguousarray(g, dtype=np.float64),
                               np.ascontiguousarray(h, dtype=np.float64))


def power_sum(p: np.ndarray, alpha: float) -> float:
    return float(_active["power_sum"](np.ascontiguousarray(p, dtype=np.float64), float(alpha)))


def shannon_sum(p: np.ndarray) -> float:
    return float(_active["shannon_sum"](np.ascontiguousarray(p, dtype=np.float64)))


def submatrix_profile(v: np.ndarray) -> np.ndarray:
    # the batched LAPACK path beats per-submatrix SVDs in the compiled loop
    # (see benchmarks/bench_kernels.py), so it is used under both backends
    return submatrix_profile_np(np.ascontiguousarray(v, dtype=np.complex128))


def convolution_elements(na: np.ndarray, nb: np.ndarray) -> np.ndarray:
    return _active["convolution_elements"](np.ascontiguousarray(na, dtype=np.complex128),
                                           np.ascontiguousarray(nb, dtype=np.complex128))
