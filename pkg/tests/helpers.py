"""Shared oracles and criterion batteries for the test modules."""

import itertools
import math

import numpy as np

from entrosep import criteria as cr
from entrosep.criteria import build_convolution_povm
from entrosep.entropy import INFINITY
from entrosep.measurements import qutrit_bases
from entrosep.presets import Setup, build, qutrit_cross_pairs, rotated_pair


def brute_force_s(v):
    """Independent oracle: enumerate every row/column subset explicitly."""
    n = v.shape[0]
    out = []
    for k in range(1, 2 * n):
        best = 0.0
        for r in range(1, n + 1):
            rp = k + 1 - r
            if not 1 <= rp <= n:
                continue
            for rows in itertools.combinations(range(n), r):
                for cols in itertools.combinations(range(n), rp):
                    sub = v[np.ix_(rows, cols)]
                    best = max(best, float(np.sqrt(np.max(np.linalg.eigvalsh(sub @ sub.conj().T)))))
        out.append(best)
    return np.array(out)


def qubit_criteria():
    """Every criterion at several valid parameter choices, for two qubits."""
    out = []
    for theta in (math.pi / 6, math.pi / 4, 0.4):
        m1, m2 = rotated_pair(theta)
        for a in (1.0, 1.5, 2.0, INFINITY):
            b = cr.conjugate_order(a)
            out.append(lambda r, a=a, b=b, m1=m1, m2=m2: cr.mu_criterion(m1, m2, r, a, b))
            if not math.isinf(a):
                out.append(lambda r, a=a, b=b, m1=m1, m2=m2:
                           cr.mu_criterion(m1, m2, r, a, b, "tsallis"))
        for a in (0.5, 1.0):
            out.append(lambda r, a=a, m1=m1, m2=m2: cr.maj_criterion(m1, m2, r, a))
        for a in (0.5, 2.0, 3.0):
            out.append(lambda r, a=a, m1=m1, m2=m2: cr.maj_criterion(m1, m2, r, a, "tsallis"))
        for a in (1.5, 2.0):
            for v in "AB":
                out.append(lambda r, a=a, v=v, m1=m1, m2=m2:
                           cr.maj_criterion_qubit(m1, m2, r, a, v))
    for k in (2, 3):
        out.append(build(Setup("mub", alpha=2.0, k=k)))
        out.append(build(Setup("mub", alpha=0.5, k=k)))
        out.append(build(Setup("mub", alpha=2.0, k=k, kind="renyi")))
    out.append(build(Setup("mum", alpha=2.0, kappa_t=0.8)))
    out.append(build(Setup("mum", alpha=1.0, kappa_t=0.5)))
    out.append(build(Setup("sic", alpha=2.0)))
    out.append(build(Setup("sic", alpha=0.5)))
    out.append(build(Setup("gsic", alpha=2.0, gsic_t=0.9)))
    out.append(build(Setup("correlation")))
    return out


def qutrit_criteria():
    dims = (3, 3)
    q = qutrit_bases()
    m1, m2 = build_convolution_povm(q["z"], q["x"]), build_convolution_povm(q["x"], q["z"])
    return [
        lambda r: cr.mu_criterion(m1, m2, r, 1.0, 1.0),
        lambda r: cr.mu_criterion(m1, m2, r, INFINITY, 0.5),
        lambda r: cr.maj_criterion(m1, m2, r, 1.0),
        build(Setup("mub", dims=dims, alpha=2.0, pairs=qutrit_cross_pairs())),
        build(Setup("mub", dims=dims, alpha=2.0, k=4)),
        build(Setup("mub", dims=dims, alpha=1.0, k=3, kind="renyi")),
        build(Setup("mum", dims=dims, alpha=2.0, kappa_t=0.8)),
        build(Setup("sic", dims=dims, alpha=2.0)),
        build(Setup("gsic", dims=dims, alpha=2.0, gsic_t=0.8)),
        build(Setup("correlation", dims=dims, pairs=qutrit_cross_pairs())),
    ]
