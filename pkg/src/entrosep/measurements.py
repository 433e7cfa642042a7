"""Measurement data model: rank-one and general POVMs, MUBs, SICs, MUMs.

Rank-one POVMs store their subnormalized kets as the rows of a ``(D, d)``
array, so ``vectors[i]`` is |f_i>. General POVMs store a ``(D, d, d)`` stack
of operators. Both expose ``elements`` so probabilities are computed the
same way for either.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .entropy import as_probability
from .exceptions import UnsupportedError, UsageError
from .linalg import DensityMatrix

EPS_POVM = 1e-9


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class RankOnePOVM:
    vectors: np.ndarray
    label: str = ""

    def __post_init__(self):
        v = np.array(self.vectors, dtype=np.complex128)
        if v.ndim != 2:
            raise UsageError("rank-one POVM vectors must form a (D, d) array")
        if v.shape[0] < v.shape[1]:
            raise UsageError(f"{v.shape[0]} outcomes cannot resolve the identity in dim {v.shape[1]}")
        if not np.all(np.isfinite(v)):
            raise UsageError("POVM vectors contain NaN or Inf")
        dev = identity_deviation(np.einsum("ia,ib->ab", v, v.conj()))
        if dev > EPS_POVM:
            raise UsageError(f"vectors do not resolve the identity (deviation {dev:.3e})")
        object.__setattr__(self, "vectors", _readonly(v))

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]

    @property
    def n_outcomes(self) -> int:
        return self.vectors.shape[0]

    @property
    def elements(self) -> np.ndarray:
        return np.einsum("ia,ib->iab", self.vectors, self.vectors.conj())

    @property
    def is_basis(self) -> bool:
        return self.n_outcomes == self.dim


@dataclass(frozen=True)
class GeneralPOVM:
    elements: np.ndarray
    label: str = ""

    def __post_init__(self):
        e = np.array(self.elements, dtype=np.complex128)
        if e.ndim != 3 or e.shape[1] != e.shape[2]:
            raise UsageError("POVM elements must form a (D, d, d) array")
        if not np.all(np.isfinite(e)):
            raise UsageError("POVM elements contain NaN or Inf")
        herm = float(np.max(np.abs(e - e.conj().transpose(0, 2, 1))))
        if herm > EPS_POVM:
            raise UsageError(f"POVM element not Hermitian (deviation {herm:.3e})")
        e = (e + e.conj().transpose(0, 2, 1)) / 2
        min_eig = float(np.linalg.eigvalsh(e).min())
        if min_eig < -EPS_POVM:
            raise UsageError(f"POVM element not positive (eigenvalue {min_eig:.3e})")
        dev = identity_deviation(e.sum(axis=0))
        if dev > EPS_POVM:
            raise UsageError(f"elements do not sum to the identity (deviation {dev:.3e})")
        object.__setattr__(self, "elements", _readonly(e))

    @property
    def dim(self) -> int:
        return self.elements.shape[1]

    @property
    def n_outcomes(self) -> int:
        return self.elements.shape[0]


Measurement = RankOnePOVM | GeneralPOVM


def identity_deviation(m: np.ndarray) -> float:
    return float(np.max(np.abs(m - np.eye(m.shape[0]))))


def elements_of(m) -> np.ndarray:
    if isinstance(m, (RankOnePOVM, GeneralPOVM)):
        return m.elements
    raise UsageError(f"not a measurement: {type(m).__name__}")


def probabilities(m, rho) -> np.ndarray:
    """Outcome distribution ``p_i = Tr(N_i rho)``."""
    r = rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=np.complex128)
    if r.shape != (m.dim, m.dim):
        raise UsageError(f"state of dim {r.shape[0]} does not match measurement dim {m.dim}")
    if isinstance(m, RankOnePOVM):
        v = m.vectors
        p = np.einsum("ia,ab,ib->i", v.conj(), r, v).real
    else:
        p = np.einsum("iab,ba->i", m.elements, r).real
    return as_probability(p)


# --------------------------------------------------------------------------
# constructors
# --------------------------------------------------------------------------

def basis(vectors, label: str = "") -> RankOnePOVM:
    return RankOnePOVM(np.asarray(vectors, dtype=np.complex128), label)


def computational_basis(d: int) -> RankOnePOVM:
    return basis(np.eye(d), "z")


def rotated_qubit_basis(theta: float) -> RankOnePOVM:
    """``{cos t|0> + sin t|1>, sin t|0> - cos t|1>}``."""
    c, s = math.cos(theta), math.sin(theta)
    return basis([[c, s], [s, -c]], f"rot({theta:.6g})")


def qubit_pauli_mubs() -> list[RankOnePOVM]:
    """Eigenbases of sigma_z, sigma_x, sigma_y; index 0 is the +1 eigenvector."""
    r = 1 / math.sqrt(2)
    return [
        basis([[1, 0], [0, 1]], "z"),
        basis([[r, r], [r, -r]], "x"),
        basis([[r, 1j * r], [r, -1j * r]], "y"),
    ]


def generalized_pauli(d: int) -> tuple[np.ndarray, np.ndarray]:
    """Clock ``Z = diag(w^j)`` and shift ``X|j> = |j+1>``."""
    w = np.exp(2j * np.pi / d)
    z = np.diag(w ** np.arange(d))
    x = np.roll(np.eye(d, dtype=np.complex128), 1, axis=0)
    return z, x


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % k for k in range(2, math.isqrt(n) + 1))


def eigenbasis(u: np.ndarray, label: str = "") -> RankOnePOVM:
    """Eigenbasis of a normal matrix with nondegenerate spectrum.

    Vectors are ordered by eigenvalue phase in ``[0, 2pi)`` and their
    phases fixed so the first non-negligible component is real positive.
    """
    vals, vecs = np.linalg.eig(u)
    order = np.argsort(np.round(np.mod(np.angle(vals), 2 * np.pi), 12))
    rows = []
    for k in order:
        v = vecs[:, k] / np.linalg.norm(vecs[:, k])
        lead = v[np.argmax(np.abs(v) > 1e-8)]
        rows.append(v * (abs(lead) / lead))
    return basis(np.array(rows), label)


def prime_pauli_mubs(d: int) -> list[RankOnePOVM]:
    """``d + 1`` MUBs from eigenbases of Z, X and X Z^m (``d`` prime)."""
    if not _is_prime(d):
        raise UnsupportedError(f"MUB construction needs a prime dimension, got {d}")
    z, x = generalized_pauli(d)
    out = [computational_basis(d)]
    for m in range(d):
        out.append(eigenbasis(x @ np.linalg.matrix_power(z, m), f"xz^{m}"))
    return out


def qutrit_bases() -> dict[str, RankOnePOVM]:
    """Eigenbases of Z, X and ZX in dimension three.

    ``x[k]`` carries X-eigenvalue ``w^k`` with ``|x_k> = sum_j w^(-jk)|z_j>/sqrt3``,
    the labelling under which the two-qutrit test state has the expected
    eigen-relations. ``y`` is ordered by ZX eigenvalue phase.
    """
    w = np.exp(2j * np.pi / 3)
    z_op, x_op = generalized_pauli(3)
    xs = np.array([[w ** (-j * k) for j in range(3)] for k in range(3)]) / math.sqrt(3)
    return {
        "z": computational_basis(3),
        "x": basis(xs, "x"),
        "y": eigenbasis(z_op @ x_op, "y"),
    }


def _bloch_ket(theta: float, phi: float) -> np.ndarray:
    return np.array([math.cos(theta / 2), np.exp(1j * phi) * math.sin(theta / 2)])


def sic_fiducials(d: int) -> np.ndarray:
    """Normalized SIC kets ``phi_i`` (rows) for ``d`` in {2, 3}."""
    if d == 2:
        t = math.acos(-1 / 3)
        return np.array([
            _bloch_ket(0.0, 0.0),
            _bloch_ket(t, 0.0),
            _bloch_ket(t, 2 * math.pi / 3),
            _bloch_ket(t, 4 * math.pi / 3),
        ])
    if d == 3:
        fid = np.array([0, 1, -1], dtype=np.complex128) / math.sqrt(2)
        z, x = generalized_pauli(3)
        rows = [np.linalg.matrix_power(x, a) @ np.linalg.matrix_power(z, b) @ fid
                for a in range(3) for b in range(3)]
        return np.array(rows)
    raise UnsupportedError(f"SIC-POVM available only for d = 2, 3 (got {d})")


def sic_povm(d: int) -> RankOnePOVM:
    """Rank-one SIC-POVM with vectors ``phi_i / sqrt(d)``; validated before return."""
    m = RankOnePOVM(sic_fiducials(d) / math.sqrt(d), f"sic{d}")
    rep = validate_sic(m)
    if not rep.passed:  # pragma: no cover - construction is exact
        raise AssertionError(f"SIC construction failed validation: {rep}")
    return m


def conjugate_partner(m: RankOnePOVM) -> RankOnePOVM:
    """Complex-conjugate POVM with outcome ``j`` relabelled as ``-j mod D``.

    Paired with ``m`` through the convolution scheme, outcome 0 collects
    every ``N_i (x) conj(N_i)``, the perfectly correlated events of
    ``|Phi>``-type maximally entangled states.
    """
    idx = (-np.arange(m.n_outcomes)) % m.n_outcomes
    return RankOnePOVM(m.vectors[idx].conj(), f"{m.label}*")


@dataclass(frozen=True)
class MUMSet:
    povms: tuple[GeneralPOVM, ...]
    kappa: float

    def __post_init__(self):
        object.__setattr__(self, "povms", tuple(self.povms))
        rep = validate_mum(list(self.povms), self.kappa)
        if not rep.passed:
            raise UsageError(f"not a MUM set with kappa={self.kappa}: {rep.worst}")

    @property
    def dim(self) -> int:
        return self.povms[0].dim


@dataclass(frozen=True)
class GeneralSIC:
    povm: GeneralPOVM
    a: float

    def __post_init__(self):
        rep = validate_gsic(self.povm, self.a)
        if not rep.passed:
            raise UsageError(f"not a general SIC-POVM with a={self.a}: {rep.worst}")

    @property
    def dim(self) -> int:
        return self.povm.dim


def mum_kappa(t: float, d: int) -> float:
    return t * t + (1 - t * t) / d


def mum_from_mubs(bases: list[RankOnePOVM], t: float) -> MUMSet:
    """Depolarized MUBs ``N_i = t|e_i><e_i| + (1-t) I/d``."""
    if not 0 < t <= 1:
        raise UsageError(f"mixing parameter t must lie in (0, 1], got {t}")
    if not bases:
        raise UsageError("need at least one basis")
    for e, f in itertools.combinations(bases, 2):
        if not validate_mub_pair(e, f).passed:
            raise UsageError(f"bases {e.label!r} and {f.label!r} are not mutually unbiased")
    d = bases[0].dim
    povms = tuple(
        GeneralPOVM(t * b.elements + (1 - t) * np.eye(d)[None] / d, f"mum({b.label},{t:g})")
        for b in bases)
    return MUMSet(povms, mum_kappa(t, d))


def gsic_a(t: float, d: int) -> float:
    return t * t / d**2 + 2 * t * (1 - t) / d**3 + (1 - t) ** 2 / d**3


def gsic_from_sic(sic: RankOnePOVM, t: float) -> GeneralSIC:
    """Depolarized SIC ``N_i = t|f_i><f_i| + (1-t) I/d^2``."""
    if not 0 < t <= 1:
        raise UsageError(f"mixing parameter t must lie in (0, 1], got {t}")
    if not validate_sic(sic).passed:
        raise UsageError("input is not a SIC-POVM")
    d = sic.dim
    el = t * sic.elements + (1 - t) * np.eye(d)[None] / d**2
    return GeneralSIC(GeneralPOVM(el, f"gsic({sic.label},{t:g})"), gsic_a(t, d))


# --------------------------------------------------------------------------
# overlaps
# --------------------------------------------------------------------------

def overlap_matrix(f: RankOnePOVM, g: RankOnePOVM) -> np.ndarray:
    """``V[i, j] = <f_i|g_j>``."""
    if f.dim != g.dim:
        raise UsageError(f"dimension mismatch: {f.dim} vs {g.dim}")
    return f.vectors.conj() @ g.vectors.T


def eta(f: RankOnePOVM, g: RankOnePOVM) -> float:
    """Maximal overlap ``max |<f_i|g_j>|``."""
    return float(np.max(np.abs(overlap_matrix(f, g))))


def index_of_coincidence(p) -> float:
    p = np.asarray(p, dtype=np.float64)
    return float(np.dot(p, p))


# --------------------------------------------------------------------------
# validators
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ValidationReport:
    """Outcome of a validator: ``worst`` maps each condition to its largest deviation."""

    name: str
    passed: bool
    worst: dict[str, float] = field(default_factory=dict)
    measured: dict[str, float] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "worst": dict(self.worst),
                "measured": dict(self.measured)}


def _report(name, worst, tol, measured=None) -> ValidationReport:
    worst = {k: float(v) for k, v in worst.items()}
    return ValidationReport(name, all(v <= tol for v in worst.values()), worst,
                            {k: float(v) for k, v in (measured or {}).items()})


def validate_povm(m, tol: float = EPS_POVM) -> ValidationReport:
    el = np.asarray(m.elements if hasattr(m, "elements") else m, dtype=np.complex128)
    herm = float(np.max(np.abs(el - el.conj().transpose(0, 2, 1))))
    min_eig = float(np.linalg.eigvalsh((el + el.conj().transpose(0, 2, 1)) / 2).min())
    return _report("povm", {
        "hermitian": herm,
        "psd": max(0.0, -min_eig),
        "completeness": identity_deviation(el.sum(axis=0)),
    }, tol)


def validate_mub_pair(e: RankOnePOVM, f: RankOnePOVM, tol: float = EPS_POVM) -> ValidationReport:
    d = e.dim
    worst = {
        "basis": max(abs(e.n_outcomes - d), abs(f.n_outcomes - d),
                     identity_deviation(e.vectors.conj() @ e.vectors.T),
                     identity_deviation(f.vectors.conj() @ f.vectors.T)),
    }
    if f.dim != d or e.n_outcomes != d or f.n_outcomes != d:
        worst["unbiased"] = math.inf
    else:
        worst["unbiased"] = float(np.max(np.abs(np.abs(overlap_matrix(e, f)) ** 2 - 1 / d)))
    return _report("mub_pair", worst, tol)


def validate_mum(povms: list, kappa: float | None = None, tol: float = EPS_POVM) -> ValidationReport:
    """Check trace-one elements, cross overlaps ``1/d`` and intra overlaps for ``kappa``.

    When ``kappa`` is omitted it is measured from the first element.
    """
    els = [np.asarray(p.elements) for p in povms]
    d = els[0].shape[1]
    worst = {"povm": max(max(validate_povm(e).worst.values()) for e in els),
             "count": max(abs(e.shape[0] - d) for e in els)}
    if worst["count"]:
        return _report("mum", worst, tol)
    measured_kappa = float(np.real(np.trace(els[0][0] @ els[0][0])))
    kappa = measured_kappa if kappa is None else float(kappa)
    worst["trace_one"] = max(float(np.max(np.abs(np.einsum("iaa->i", e) - 1))) for e in els)
    cross = 0.0
    for a, b in itertools.combinations(els, 2):
        g = np.einsum("iab,jba->ij", a, b).real
        cross = max(cross, float(np.max(np.abs(g - 1 / d))))
    worst["cross"] = cross
    target = np.full((d, d), (1 - kappa) / (d - 1)) if d > 1 else np.zeros((1, 1))
    np.fill_diagonal(target, kappa)
    worst["intra"] = max(float(np.max(np.abs(np.einsum("iab,jba->ij", e, e).real - target)))
                         for e in els)
    worst["kappa_range"] = 0.0 if 1 / d < kappa <= 1 + tol else abs(kappa - 1 / d) + tol + 1
    return _report("mum", worst, tol, {"kappa": measured_kappa})


def validate_sic(m: RankOnePOVM, tol: float = EPS_POVM) -> ValidationReport:
    d = m.dim
    v = m.vectors
    worst = {"count": abs(m.n_outcomes - d * d)}
    if worst["count"]:
        return _report("sic", worst, tol)
    norms = np.sum(np.abs(v) ** 2, axis=1)
    worst["norm"] = float(np.max(np.abs(norms - 1 / d)))
    g = np.abs(v.conj() @ v.T) ** 2 * d * d  # |<phi_i|phi_j>|^2
    off = g[~np.eye(d * d, dtype=bool)]
    worst["overlap"] = float(np.max(np.abs(off - 1 / (d + 1))))
    worst["completeness"] = identity_deviation(np.einsum("ia,ib->ab", v, v.conj()))
    return _report("sic", worst, tol)


def validate_gsic(m, a: float | None = None, tol: float = EPS_POVM) -> ValidationReport:
    """Check ``Tr N_i^2 = a``, ``Tr N_i N_j = b(a)`` and ``Tr N_i = 1/d``."""
    el = np.asarray(m.elements)
    d = el.shape[1]
    worst = {"povm": max(validate_povm(el).worst.values()), "count": abs(el.shape[0] - d * d)}
    if worst["count"]:
        return _report("gsic", worst, tol)
    gram = np.einsum("iab,jba->ij", el, el).real
    measured_a = float(gram[0, 0])
    a = measured_a if a is None else float(a)
    b = (1 - a * d) / (d * (d * d - 1))
    worst["purity"] = float(np.max(np.abs(np.diag(gram) - a)))
    worst["cross"] = float(np.max(np.abs(gram[~np.eye(d * d, dtype=bool)] - b)))
    worst["trace"] = float(np.max(np.abs(np.einsum("iaa->i", el).real - 1 / d)))
    worst["a_range"] = 0.0 if 1 / d**3 < a <= 1 / d**2 + tol else 1.0
    return _report("gsic", worst, tol, {"a": measured_a, "b": b})
