"""Standard local-measurement setups and named criterion builders.

A criterion builder returns a callable ``rho -> CriterionReport`` with the
convolution POVMs precomputed, which is what threshold scans consume.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

from . import criteria as cr
from .criteria import ConvolutionPOVM, build_convolution_povm
from .exceptions import UnsupportedError, UsageError
from .measurements import (
    RankOnePOVM,
    computational_basis,
    conjugate_partner,
    gsic_from_sic,
    mum_from_mubs,
    prime_pauli_mubs,
    qubit_pauli_mubs,
    qutrit_bases,
    rotated_qubit_basis,
    sic_povm,
)

CRITERIA = ("mu", "maj", "maj-qubit-a", "maj-qubit-b", "mub", "mum", "sic", "gsic", "correlation")


def rotated_pair(theta: float) -> tuple[ConvolutionPOVM, ConvolutionPOVM]:
    """Z basis on both qubits, then the rotated basis on both qubits."""
    z = computational_basis(2)
    u = rotated_qubit_basis(theta)
    return build_convolution_povm(z, z), build_convolution_povm(u, u)


def mub_bases(d: int) -> list[RankOnePOVM]:
    return qubit_pauli_mubs() if d == 2 else prime_pauli_mubs(d)


def same_basis_pairs(d: int, k: int) -> list[tuple[RankOnePOVM, RankOnePOVM]]:
    bases = mub_bases(d)
    if not 1 <= k <= len(bases):
        raise UsageError(f"K must lie in 1..{len(bases)} for d={d}, got {k}")
    return [(b, b) for b in bases[:k]]


def qutrit_cross_pairs() -> list[tuple[RankOnePOVM, RankOnePOVM]]:
    """The (z, x), (x, z), (y, y) local pairs used for the two-qutrit family."""
    q = qutrit_bases()
    return [(q["z"], q["x"]), (q["x"], q["z"]), (q["y"], q["y"])]


def convolve_pairs(pairs) -> list[ConvolutionPOVM]:
    return [build_convolution_povm(a, b) for a, b in pairs]


@dataclass
class Setup:
    """Options that select a criterion and its local measurements."""

    criterion: str
    dims: tuple[int, int] = (2, 2)
    alpha: float = 2.0
    beta: float | None = None
    kind: str | None = None
    theta: float = math.pi / 4
    k: int | None = None
    kappa_t: float = 1.0
    gsic_t: float = 1.0
    pairs: list | None = None
    pairings: list | None = None
    extra: dict = field(default_factory=dict)

    def params(self) -> dict:
        out = {"alpha": self.alpha}
        if self.criterion == "mu":
            out["beta"] = self.beta if self.beta is not None else cr.conjugate_order(self.alpha)
        if self.criterion in ("mu", "maj", "maj-qubit-a", "maj-qubit-b") and self.pairs is None:
            out["theta"] = self.theta
        if self.criterion == "mum":
            out["kappa_t"] = self.kappa_t
        if self.criterion == "gsic":
            out["gsic_t"] = self.gsic_t
        return out


def build(setup: Setup) -> Callable:
    """Turn a :class:`Setup` into ``rho -> CriterionReport``."""
    name = setup.criterion
    d = setup.dims[0]
    if setup.dims[0] != setup.dims[1]:
        raise UnsupportedError("criteria need equal local dimensions")
    theta = setup.theta

    def pairwise():
        if setup.pairs is not None:
            if len(setup.pairs) < 2:
                raise UsageError(f"{name} needs two local measurement pairs")
            return convolve_pairs(setup.pairs[:2])
        if d != 2:
            ms = convolve_pairs(same_basis_pairs(d, 2))
            return ms[0], ms[1]
        return rotated_pair(theta)

    def multi(default_k):
        if setup.pairs is not None:
            return list(setup.pairs)
        k = setup.k or default_k
        return same_basis_pairs(d, k)

    if name == "mu":
        m1, m2 = pairwise()
        alpha = setup.alpha
        beta = setup.beta if setup.beta is not None else cr.conjugate_order(alpha)
        kind = setup.kind or "renyi"
        return lambda rho: cr.mu_criterion(m1, m2, rho, alpha, beta, kind)
    if name == "maj":
        m1, m2 = pairwise()
        kind = setup.kind or "renyi"
        return lambda rho: cr.maj_criterion(m1, m2, rho, setup.alpha, kind)
    if name in ("maj-qubit-a", "maj-qubit-b"):
        m1, m2 = pairwise()
        variant = name[-1]
        return lambda rho: cr.maj_criterion_qubit(m1, m2, rho, setup.alpha, variant)
    if name == "mub":
        ms = convolve_pairs(multi(3 if d == 2 else d + 1))
        kind = setup.kind or "tsallis"
        return lambda rho: cr.mub_criterion(ms, rho, setup.alpha, kind)
    if name == "mum":
        if setup.pairs is not None:
            # user-supplied MUM locals; efficiencies are measured by the criterion
            ms = convolve_pairs(setup.pairs)
            return lambda rho: cr.mum_criterion(ms, rho, setup.alpha)
        pairs = multi(3 if d == 2 else d + 1)
        mum_a = mum_from_mubs([a for a, _ in pairs], setup.kappa_t)
        mum_b = mum_from_mubs([b for _, b in pairs], setup.kappa_t)
        ms = [build_convolution_povm(a, b) for a, b in zip(mum_a.povms, mum_b.povms)]
        return lambda rho: cr.mum_criterion(ms, rho, setup.alpha, mum_a.kappa, mum_b.kappa)
    if name in ("sic", "gsic") and setup.pairs is not None:
        m = build_convolution_povm(*setup.pairs[0])
        if name == "sic":
            return lambda rho: cr.sic_criterion(m, rho, setup.alpha)
        return lambda rho: cr.gsic_criterion(m, rho, setup.alpha)
    if name in ("sic", "gsic"):
        sic = sic_povm(d)
        partner = conjugate_partner(sic)
        if name == "sic":
            m = build_convolution_povm(sic, partner)
            return lambda rho: cr.sic_criterion(m, rho, setup.alpha)
        ga, gb = gsic_from_sic(sic, setup.gsic_t), gsic_from_sic(partner, setup.gsic_t)
        m = build_convolution_povm(ga.povm, gb.povm)
        return lambda rho: cr.gsic_criterion(m, rho, setup.alpha, ga.a, gb.a)
    if name == "correlation":
        pairs = multi(3 if d == 2 else d + 1)
        return lambda rho: cr.correlation_measure(pairs, rho, setup.pairings)
    raise UsageError(f"unknown criterion {name!r}; choose from {', '.join(CRITERIA)}")
