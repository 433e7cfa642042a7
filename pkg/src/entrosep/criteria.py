"""Convolution-scheme joint measurements and the entropic separability tests.

Every test returns a :class:`CriterionReport`. For the entropic tests the
separable-state inequality reads ``observed >= bound`` and a violation
certifies entanglement. Where a bound exists for either subsystem the larger
(stricter) one is used and the chosen side is recorded.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .entropy import INFINITY, alpha_log, as_probability, check_order, entropy, norm_alpha, renyi
from .exceptions import SizeError, UnsupportedError, UsageError
from .linalg import DensityMatrix, max_dim
from .majorization import s_values
from .measurements import (
    GeneralPOVM,
    RankOnePOVM,
    eta,
    identity_deviation,
    overlap_matrix,
    validate_gsic,
    validate_mub_pair,
    validate_mum,
    validate_sic,
)

EPS_C = 1e-9
MU_ALPHA_GRID = (1.0, 1.25, 1.5, 2.0, 3.0, 5.0, 10.0, INFINITY)


@dataclass(frozen=True)
class CriterionReport:
    """Result of one separability test.

    ``sense`` is ``">="`` when separable states satisfy ``observed >= bound``
    and ``"<="`` for upper-bounded measures. ``margin`` is signed so that a
    negative value always points towards entanglement.
    """

    criterion_id: str
    params: dict
    observed: float
    bound: float
    margin: float
    violated: bool
    side: str
    sense: str = ">="

    def to_dict(self) -> dict:
        return {
            "criterion_id": self.criterion_id,
            "params": {k: _jsonable(v) for k, v in sorted(self.params.items())},
            "observed": self.observed,
            "bound": self.bound,
            "margin": self.margin,
            "violated": self.violated,
            "side": self.side,
            "sense": self.sense,
        }


def _jsonable(v):
    if isinstance(v, float) and math.isinf(v):
        return "inf"
    return v


def make_report(criterion_id: str, params: dict, observed: float, bound: float, side: str,
                sense: str = ">=") -> CriterionReport:
    observed, bound = float(observed), float(bound)
    margin = observed - bound if sense == ">=" else bound - observed
    return CriterionReport(criterion_id, dict(params), observed, bound, margin,
                           margin < -EPS_C, side, sense)


@dataclass(frozen=True)
class ConvolutionPOVM:
    """Joint POVM ``Pi_k = sum_i N_A,i (x) N_B,(k-i) mod D`` with its local pair."""

    elements: np.ndarray
    local_a: RankOnePOVM | GeneralPOVM
    local_b: RankOnePOVM | GeneralPOVM
    label: str = field(default="")

    @property
    def n_outcomes(self) -> int:
        return self.elements.shape[0]

    @property
    def dims(self) -> tuple[int, int]:
        return self.local_a.dim, self.local_b.dim

    def probabilities(self, rho) -> np.ndarray:
        r = rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=np.complex128)
        n = self.elements.shape[1]
        if r.shape != (n, n):
            raise UsageError(f"state of dim {r.shape[0]} does not match joint dim {n}")
        return as_probability(np.einsum("kab,ba->k", self.elements, r).real)


def build_convolution_povm(na, nb, label: str = "") -> ConvolutionPOVM:
    if na.n_outcomes != nb.n_outcomes:
        raise UsageError(f"outcome counts differ: {na.n_outcomes} vs {nb.n_outcomes}")
    if na.dim != nb.dim:
        raise UsageError(f"local dimensions differ: {na.dim} vs {nb.dim}")
    n = na.dim * nb.dim
    if n > max_dim():
        raise SizeError(f"joint dimension {n} exceeds cap {max_dim()}")
    el = _kernels.convolution_elements(na.elements, nb.elements)
    dev = identity_deviation(el.sum(axis=0))
    if dev > 1e-9:  # pragma: no cover - guaranteed by local completeness
        raise AssertionError(f"convolution POVM incomplete (deviation {dev:.3e})")
    el.setflags(write=False)
    return ConvolutionPOVM(el, na, nb, label or f"{na.label}*{nb.label}")


def joint_probabilities(m: ConvolutionPOVM, rho) -> np.ndarray:
    return m.probabilities(rho)


def conjugate_order(alpha: float) -> float:
    """``beta`` with ``1/alpha + 1/beta = 2``."""
    alpha = check_order(alpha)
    if math.isinf(alpha):
        return 0.5
    if alpha == 0.5:
        return INFINITY
    if alpha < 0.5:
        raise UsageError(f"no conjugate order exists for alpha={alpha} < 1/2")
    return alpha / (2 * alpha - 1)


def _check_conjugate(alpha: float, beta: float) -> None:
    if math.isinf(alpha) or math.isinf(beta):
        other = beta if math.isinf(alpha) else alpha
        ok = abs(other - 0.5) < 1e-12
    else:
        ok = abs(1 / alpha + 1 / beta - 2) < 1e-9
    if not ok:
        raise UsageError(f"orders must satisfy 1/alpha + 1/beta = 2, got ({alpha}, {beta})")


def _pick_side(bound_a: float, bound_b: float) -> tuple[float, str]:
    if bound_b > bound_a:
        return bound_b, "B"
    return bound_a, "A"


def _require_rank_one(*ms: ConvolutionPOVM) -> None:
    for m in ms:
        if not (isinstance(m.local_a, RankOnePOVM) and isinstance(m.local_b, RankOnePOVM)):
            raise UsageError("this criterion needs rank-one local POVMs on both sides")


def _check_kind(kind: str) -> None:
    if kind not in ("renyi", "tsallis"):
        raise UsageError(f"unknown entropy kind {kind!r}")


def mu_criterion(m1: ConvolutionPOVM, m2: ConvolutionPOVM, rho, alpha: float, beta: float,
                 kind: str = "renyi") -> CriterionReport:
    """Maassen-Uffink type test: ``E_alpha(M1) + E_beta(M2) >= bound(eta_S)``.

    Rényi bound ``-2 ln eta``; Tsallis bound ``ln_mu(eta^-2)`` with
    ``mu = max(alpha, beta)``.
    """
    _check_kind(kind)
    alpha, beta = check_order(alpha), check_order(beta)
    _check_conjugate(alpha, beta)
    if kind == "tsallis" and (math.isinf(alpha) or math.isinf(beta)):
        raise UsageError("Tsallis entropies of infinite order are not supported")
    _require_rank_one(m1, m2)
    observed = (entropy(m1.probabilities(rho), alpha, kind)
                + entropy(m2.probabilities(rho), beta, kind))
    etas = (eta(m1.local_a, m2.local_a), eta(m1.local_b, m2.local_b))
    if kind == "renyi":
        bounds = [-2 * math.log(e) for e in etas]
    else:
        mu = max(alpha, beta)
        bounds = [alpha_log(e ** -2, mu) for e in etas]
    bound, side = _pick_side(*bounds)
    params = {"alpha": alpha, "beta": beta, "entropy": kind,
              "eta": etas[0] if side == "A" else etas[1]}
    return make_report("mu", params, observed, bound, side)


def _local_profile(m1: ConvolutionPOVM, m2: ConvolutionPOVM, side: str):
    fa, fb = (m1.local_a, m2.local_a) if side == "A" else (m1.local_b, m2.local_b)
    return s_values(overlap_matrix(fa, fb))


def maj_criterion(m1: ConvolutionPOVM, m2: ConvolutionPOVM, rho, alpha: float,
                  kind: str = "renyi") -> CriterionReport:
    """Majorization test: ``E_alpha(M1) + E_alpha(M2) >= E_alpha(w_S)``.

    Rényi needs ``0 < alpha <= 1``; for qubit pairs with ``1 < alpha <= 2``
    use :func:`maj_criterion_qubit`.
    """
    _check_kind(kind)
    alpha = check_order(alpha, allow_inf=False)
    if kind == "renyi" and alpha > 1 + 1e-12:
        raise UsageError("Rényi majorization test needs alpha <= 1; "
                         "use maj_criterion_qubit for two-qubit bases with 1 < alpha <= 2")
    _require_rank_one(m1, m2)
    observed = (entropy(m1.probabilities(rho), alpha, kind)
                + entropy(m2.probabilities(rho), alpha, kind))
    bounds = [entropy(_local_profile(m1, m2, s).w, alpha, kind) for s in "AB"]
    bound, side = _pick_side(*bounds)
    return make_report("maj", {"alpha": alpha, "entropy": kind}, observed, bound, side)


def maj_criterion_qubit(m1: ConvolutionPOVM, m2: ConvolutionPOVM, rho, alpha: float,
                        variant: str = "A") -> CriterionReport:
    """Two-qubit Rényi tests for ``1 < alpha <= 2``.

    Variant ``"A"``: bound ``2/(1-alpha) ln((1 + ||w||_alpha^alpha)/2)``.
    Variant ``"B"``: bound ``R_alpha(w')``.
    """
    variant = variant.upper()
    if variant not in ("A", "B"):
        raise UsageError(f"variant must be 'A' or 'B', got {variant!r}")
    alpha = check_order(alpha, allow_inf=False)
    if not 1 < alpha <= 2:
        raise UsageError(f"qubit majorization variants need 1 < alpha <= 2, got {alpha}")
    _require_rank_one(m1, m2)
    for m in (m1, m2):
        if m.dims != (2, 2):
            raise UnsupportedError("qubit majorization variants need two-qubit systems")
        if not (m.local_a.is_basis and m.local_b.is_basis):
            raise UsageError("qubit majorization variants need orthonormal local bases")
    observed = renyi(m1.probabilities(rho), alpha) + renyi(m2.probabilities(rho), alpha)
    bounds = []
    for s in "AB":
        prof = _local_profile(m1, m2, s)
        if variant == "A":
            na = norm_alpha(prof.w, alpha) ** alpha
            bounds.append(2 / (1 - alpha) * math.log((1 + na) / 2))
        else:
            bounds.append(renyi(prof.w_prime, alpha))
    bound, side = _pick_side(*bounds)
    return make_report(f"maj-qubit-{variant.lower()}", {"alpha": alpha, "entropy": "renyi"},
                       observed, bound, side)


def _check_mub_side(bases: list[RankOnePOVM], side: str) -> None:
    for e, f in itertools.combinations(bases, 2):
        if not validate_mub_pair(e, f).passed:
            raise UsageError(f"side {side}: local bases {e.label!r}, {f.label!r} are not MUBs")


def mub_criterion(ms: list[ConvolutionPOVM], rho, alpha: float,
                  kind: str = "tsallis") -> CriterionReport:
    """Average-entropy test over K convolution measurements built from MUBs.

    Bound ``ln_alpha(Kd/(d+K-1))`` (Tsallis) or ``ln(Kd/(d+K-1))`` (Rényi).
    Tsallis allows ``0 < alpha <= 2``; Rényi ``alpha <= 1``, or ``alpha <= 2``
    for qubits.
    """
    _check_kind(kind)
    ms = list(ms)
    if not ms:
        raise UsageError("need at least one measurement")
    alpha = check_order(alpha, allow_inf=False)
    _require_rank_one(*ms)
    d = ms[0].local_a.dim
    limit = 2.0 if (kind == "tsallis" or d == 2) else 1.0
    if alpha > limit + 1e-12:
        raise UsageError(f"{kind} MUB test needs alpha <= {limit:g} for d={d}, got {alpha}")
    _check_mub_side([m.local_a for m in ms], "A")
    _check_mub_side([m.local_b for m in ms], "B")
    k = len(ms)
    observed = float(np.mean([entropy(m.probabilities(rho), alpha, kind) for m in ms]))
    ratio = k * d / (d + k - 1)
    bound = alpha_log(ratio, alpha) if kind == "tsallis" else math.log(ratio)
    return make_report("mub", {"alpha": alpha, "K": k, "entropy": kind}, observed, bound, "AB")


def _check_tsallis_order(alpha: float) -> float:
    alpha = check_order(alpha, allow_inf=False)
    if alpha > 2 + 1e-12:
        raise UsageError(f"test needs 0 < alpha <= 2, got {alpha}")
    return alpha


def mum_criterion(ms: list[ConvolutionPOVM], rho, alpha: float, kappa_a: float | None = None,
                  kappa_b: float | None = None) -> CriterionReport:
    """Tsallis test over K convolution measurements built from MUMs.

    Bound ``ln_alpha(Kd/(kappa_S d + K - 1))``. The efficiencies are measured
    from the local POVMs when not given, and validated either way.
    """
    ms = list(ms)
    if not ms:
        raise UsageError("need at least one measurement")
    alpha = _check_tsallis_order(alpha)
    d = ms[0].local_a.dim
    kappas = []
    for side, given in (("A", kappa_a), ("B", kappa_b)):
        locals_ = [m.local_a if side == "A" else m.local_b for m in ms]
        rep = validate_mum(locals_, given)
        kappa = rep.measured.get("kappa") if given is None else float(given)
        if kappa is None or not 1 / d < kappa <= 1 + 1e-12:
            raise UsageError(f"side {side}: efficiency {kappa} outside (1/d, 1]")
        if not rep.passed:
            raise UsageError(f"side {side}: local POVMs are not MUMs of efficiency "
                             f"{kappa}: {rep.worst}")
        kappas.append(kappa)
    k = len(ms)
    observed = float(np.mean([entropy(m.probabilities(rho), alpha, "tsallis") for m in ms]))
    bounds = [alpha_log(k * d / (kap * d + k - 1), alpha) for kap in kappas]
    bound, side = _pick_side(*bounds)
    params = {"alpha": alpha, "K": k, "kappa": kappas[0] if side == "A" else kappas[1],
              "entropy": "tsallis"}
    return make_report("mum", params, observed, bound, side)


def sic_criterion(m: ConvolutionPOVM, rho, alpha: float) -> CriterionReport:
    """Tsallis test with SIC-POVM locals: ``H_alpha(M) >= ln_alpha(d(d+1)/2)``."""
    alpha = _check_tsallis_order(alpha)
    _require_rank_one(m)
    for side, loc in (("A", m.local_a), ("B", m.local_b)):
        if not validate_sic(loc).passed:
            raise UsageError(f"side {side}: local POVM is not a SIC-POVM")
    d = m.local_a.dim
    observed = entropy(m.probabilities(rho), alpha, "tsallis")
    bound = alpha_log(d * (d + 1) / 2, alpha)
    return make_report("sic", {"alpha": alpha, "entropy": "tsallis"}, observed, bound, "AB")


def gsic_criterion(m: ConvolutionPOVM, rho, alpha: float, a_a: float | None = None,
                   a_b: float | None = None) -> CriterionReport:
    """Tsallis test with general SIC locals: bound ``ln_alpha(d(d+1)/(a_S d^2 + 1))``."""
    alpha = _check_tsallis_order(alpha)
    d = m.local_a.dim
    values = []
    for side, loc, given in (("A", m.local_a, a_a), ("B", m.local_b, a_b)):
        rep = validate_gsic(loc, given)
        a = rep.measured.get("a") if given is None else float(given)
        if a is None or not 1 / d**3 < a <= 1 / d**2 + 1e-12:
            raise UsageError(f"side {side}: purity parameter {a} outside (1/d^3, 1/d^2]")
        if not rep.passed:
            raise UsageError(f"side {side}: local POVM is not a general SIC: {rep.worst}")
        values.append(a)
    observed = entropy(m.probabilities(rho), alpha, "tsallis")
    bounds = [alpha_log(d * (d + 1) / (a * d * d + 1), alpha) for a in values]
    bound, side = _pick_side(*bounds)
    params = {"alpha": alpha, "a": values[0] if side == "A" else values[1],
              "entropy": "tsallis"}
    return make_report("gsic", params, observed, bound, side)


def correlation_measure(pairs, rho, pairings=None) -> CriterionReport:
    """Sum of paired joint probabilities over K local basis pairs.

    ``pairs`` is a list of ``(E_A, E_B)`` orthonormal bases; ``pairings[t]``
    maps outcome ``i`` of ``E_A`` to the paired outcome of ``E_B``
    (identity by default). Separable states obey ``J <= 1 + (K-1)/d``.
    """
    pairs = list(pairs)
    if not pairs:
        raise UsageError("need at least one basis pair")
    r = rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=np.complex128)
    d = pairs[0][0].dim
    if pairings is None:
        pairings = [list(range(d))] * len(pairs)
    if len(pairings) != len(pairs):
        raise UsageError("need one pairing per basis pair")
    j = 0.0
    for (ea, eb), perm in zip(pairs, pairings):
        if not (ea.is_basis and eb.is_basis) or ea.dim != d or eb.dim != d:
            raise UsageError("correlation measure needs orthonormal bases of equal dimension")
        if sorted(perm) != list(range(d)):
            raise UsageError(f"pairing {perm} is not a permutation of range({d})")
        for i in range(d):
            v = np.kron(ea.vectors[i], eb.vectors[perm[i]])
            j += float(np.real(v.conj() @ r @ v))
    k = len(pairs)
    bound = 1 + (k - 1) / d
    return make_report("correlation", {"K": k}, j, bound, "AB", sense="<=")
