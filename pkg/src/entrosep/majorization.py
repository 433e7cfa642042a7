"""Submatrix spectral-norm profile and the majorizing vectors built from it."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .exceptions import UnsupportedError, UsageError
from .linalg import as_matrix, spectral_norm
from .measurements import RankOnePOVM, overlap_matrix, probabilities

MAX_PROFILE_DIM = 6
TIE_TOL = 1e-10
UNIT_TOL = 1e-9


@dataclass(frozen=True)
class SValueProfile:
    """Maximal submatrix norms ``s_1 <= ... <= s_{2D-1}`` of an overlap matrix.

    ``d_star`` is the first (1-based) class index with ``s = 1``. ``w`` and
    ``w_prime`` have length ``d_star``. ``degenerate`` flags profiles with
    ``d_star`` below the matrix size, e.g. two bases sharing a vector.
    """

    s: np.ndarray
    d_star: int
    w: np.ndarray
    w_prime: np.ndarray
    degenerate: bool

    def to_dict(self) -> dict:
        return {
            "s": [float(x) for x in self.s],
            "d_star": self.d_star,
            "w": [float(x) for x in self.w],
            "w_prime": [float(x) for x in self.w_prime],
            "degenerate": self.degenerate,
        }


def raw_s_values(v) -> np.ndarray:
    """Unsmoothed ``s_k`` straight from the enumeration kernel."""
    v = as_matrix(v)
    if max(v.shape) > MAX_PROFILE_DIM:
        raise UnsupportedError(
            f"exhaustive submatrix enumeration capped at D={MAX_PROFILE_DIM}, got {v.shape}")
    return _kernels.submatrix_profile(v)


def s_values(v) -> SValueProfile:
    v = as_matrix(v)
    if v.shape[0] != v.shape[1]:
        raise UsageError(f"overlap matrix must be square, got {v.shape}")
    if spectral_norm(v) > 1 + UNIT_TOL:
        raise UsageError("overlap matrix has spectral norm above one")
    s = raw_s_values(v)
    # merge numerical ties and enforce monotonicity
    for k in range(1, s.size):
        if s[k] < s[k - 1] + TIE_TOL:
            s[k] = s[k - 1]
    hits = np.nonzero(s >= 1 - UNIT_TOL)[0]
    if hits.size == 0:
        raise UsageError("overlap matrix never reaches s = 1; is it built from two POVMs?")
    d_star = int(hits[0]) + 1
    s[d_star - 1:] = 1.0
    s = np.minimum(s, 1.0)
    s.setflags(write=False)
    w = _differences(s[:d_star])
    t = (1 + s[:d_star]) ** 2 / 4
    wp = _differences(t)
    return SValueProfile(s, d_star, w, wp, d_star < v.shape[0])


def _differences(x: np.ndarray) -> np.ndarray:
    out = np.diff(x, prepend=0.0)
    out[out < 0] = 0.0
    out.setflags(write=False)
    return out


def majorizing_w(profile: SValueProfile) -> np.ndarray:
    return profile.w


def majorizing_w_prime(profile: SValueProfile) -> np.ndarray:
    return profile.w_prime


def profile_for(f: RankOnePOVM, g: RankOnePOVM) -> SValueProfile:
    return s_values(overlap_matrix(f, g))


def subset_bound(f: RankOnePOVM, g: RankOnePOVM, i_set, j_set, rho,
                 tol: float = 1e-9) -> tuple[float, float, bool]:
    """Check ``sum_I p_i(F) + sum_J p_j(G) <= 1 + ||C_I C_J^+||``.

    ``C_I`` stacks the bras ``<f_i|`` for ``i`` in ``I``; an empty set
    contributes nothing to either side.
    """
    if f.dim != g.dim:
        raise UsageError(f"dimension mismatch: {f.dim} vs {g.dim}")
    i_set, j_set = sorted(set(i_set)), sorted(set(j_set))
    for s, m in ((i_set, f), (j_set, g)):
        if any(not 0 <= i < m.n_outcomes for i in s):
            raise UsageError(f"index subset {s} out of range for {m.n_outcomes} outcomes")
    p = probabilities(f, rho)
    q = probabilities(g, rho)
    lhs = float(p[i_set].sum() + q[j_set].sum())
    if i_set and j_set:
        ci = f.vectors[i_set].conj()
        cj = g.vectors[j_set].conj()
        rhs = 1.0 + spectral_norm(ci @ cj.conj().T)
    else:
        rhs = 1.0
    return lhs, rhs, lhs <= rhs + tol

