import itertools
import math

import numpy as np
import pytest

from entrosep.criteria import build_convolution_povm, joint_probabilities
from entrosep.exceptions import UnsupportedError, UsageError
from entrosep.linalg import random_density, validate_density
from entrosep.measurements import (
    GeneralPOVM,
    RankOnePOVM,
    computational_basis,
    eta,
    gsic_a,
    gsic_from_sic,
    index_of_coincidence,
    mum_from_mubs,
    mum_kappa,
    overlap_matrix,
    prime_pauli_mubs,
    probabilities,
    qubit_pauli_mubs,
    qutrit_bases,
    rotated_qubit_basis,
    sic_povm,
    validate_gsic,
    validate_mub_pair,
    validate_mum,
    validate_povm,
    validate_sic,
)
from entrosep.linalg import spectral_norm
from entrosep.states import qutrit_family, werner_qubit


def test_probabilities_examples():
    z = computational_basis(2)
    assert probabilities(z, np.eye(2) / 2) == pytest.approx([0.5, 0.5])
    m = build_convolution_povm(z, z)
    c = 0.4
    assert joint_probabilities(m, werner_qubit(c)) == pytest.approx([(1 + c) / 2, (1 - c) / 2])
    q = qutrit_bases()
    mzx = build_convolution_povm(q["z"], q["x"])
    p = np.sort(joint_probabilities(mzx, qutrit_family(c)))[::-1]
    assert p == pytest.approx([(1 + 2 * c) / 3, (1 - c) / 3, (1 - c) / 3])


def test_probabilities_dim_mismatch():
    with pytest.raises(UsageError):
        probabilities(computational_basis(2), np.eye(3) / 3)


def test_rotated_basis():
    x = qubit_pauli_mubs()[1]
    u = rotated_qubit_basis(math.pi / 4)
    assert np.allclose(np.abs(overlap_matrix(u, x)), np.eye(2))
    th = math.pi / 6
    v = overlap_matrix(computational_basis(2), rotated_qubit_basis(th))
    c, s = math.cos(th), math.sin(th)
    assert np.allclose(v, [[c, s], [s, -c]])


def test_pauli_mubs():
    bases = qubit_pauli_mubs()
    for e, f in itertools.combinations(bases, 2):
        assert np.allclose(np.abs(overlap_matrix(e, f)), 1 / math.sqrt(2))
        assert validate_mub_pair(e, f).passed
    assert not validate_mub_pair(bases[0], bases[0]).passed


@pytest.mark.parametrize("d", [2, 3, 5])
def test_prime_mubs(d):
    bases = prime_pauli_mubs(d)
    assert len(bases) == d + 1
    for e, f in itertools.combinations(bases, 2):
        assert np.allclose(np.abs(overlap_matrix(e, f)) ** 2, 1 / d, atol=1e-12)


def test_prime_mubs_reject_composite():
    with pytest.raises(UnsupportedError):
        prime_pauli_mubs(4)


def test_mub_validator_reports_deviation():
    rep = validate_mub_pair(computational_basis(2), rotated_qubit_basis(math.pi / 6))
    assert not rep.passed
    assert rep.worst["unbiased"] == pytest.approx(math.cos(math.pi / 6) ** 2 - 0.5)


@pytest.mark.parametrize("d", [2, 3])
def test_sic(d):
    sic = sic_povm(d)
    assert sic.n_outcomes == d * d
    assert validate_sic(sic).passed
    phi = sic.vectors * math.sqrt(d)
    g = np.abs(phi.conj() @ phi.T) ** 2
    off = g[~np.eye(d * d, dtype=bool)]
    assert np.allclose(off, 1 / (d + 1), atol=1e-12)


def test_sic_index_examples():
    sic = sic_povm(2)
    ket = np.array([0.6, 0.8j])
    p = probabilities(sic, np.outer(ket, ket.conj()))
    assert index_of_coincidence(p) == pytest.approx(1 / 3)
    p3 = probabilities(sic_povm(3), np.eye(3) / 3)
    assert index_of_coincidence(p3) == pytest.approx(1 / 9)


@pytest.mark.parametrize("d", [2, 3])
def test_sic_index_closed_form(d, rng):
    sic = sic_povm(d)
    for _ in range(50):
        rho = random_density(d, rng).matrix
        pur = np.trace(rho @ rho).real
        ic = index_of_coincidence(probabilities(sic, rho))
        assert abs(ic - (pur + 1) / (d * (d + 1))) < 1e-9


@pytest.mark.parametrize("d, t", [(2, 0.5), (2, 0.9), (3, 0.3), (3, 1.0)])
def test_gsic_index_closed_form(d, t, rng):
    g = gsic_from_sic(sic_povm(d), t)
    a = g.a
    for _ in range(50):
        rho = random_density(d, rng).matrix
        pur = np.trace(rho @ rho).real
        ic = index_of_coincidence(probabilities(g.povm, rho))
        expected = ((a * d**3 - 1) * pur + d * (1 - a * d)) / (d * (d * d - 1))
        assert abs(ic - expected) < 1e-9


def test_gsic_purity_oracle():
    # numerical Tr(N_i^2) against the mixing formula
    g = gsic_from_sic(sic_povm(2), 0.5)
    traces = [np.trace(e @ e).real for e in g.povm.elements]
    assert traces == pytest.approx([0.15625] * 4, abs=1e-14)
    assert gsic_a(0.5, 2) == pytest.approx(0.15625)
    assert gsic_a(1.0, 3) == pytest.approx(1 / 9)
    rep = validate_gsic(g.povm, g.a)
    assert rep.passed
    assert rep.measured["b"] == pytest.approx((1 - 0.15625 * 2) / (2 * 3))


def test_mum_construction():
    m = mum_from_mubs(qubit_pauli_mubs(), 0.5)
    assert m.kappa == pytest.approx(0.625)
    rep = validate_mum(list(m.povms))
    assert rep.passed and rep.measured["kappa"] == pytest.approx(0.625)
    one = mum_from_mubs(qubit_pauli_mubs(), 1.0)
    assert one.kappa == pytest.approx(1.0)
    assert np.allclose(one.povms[0].elements, qubit_pauli_mubs()[0].elements)


def test_mum_rejects_biased_input():
    with pytest.raises(UsageError):
        mum_from_mubs([computational_basis(2), rotated_qubit_basis(math.pi / 6)], 0.5)


@pytest.mark.parametrize("d, t", [(2, 1.0), (2, 0.8), (3, 0.6), (5, 0.9)])
def test_mum_index_saturates_for_complete_set(d, t, rng):
    bases = qubit_pauli_mubs() if d == 2 else prime_pauli_mubs(d)
    m = mum_from_mubs(bases, t)
    k = len(bases)
    kappa = mum_kappa(t, d)
    for _ in range(20):
        rho = random_density(d, rng).matrix
        pur = np.trace(rho @ rho).real
        total = sum(index_of_coincidence(probabilities(p, rho)) for p in m.povms)
        bound = (1 - kappa + (kappa * d - 1) * pur) / (d - 1) + (k - 1) / d
        assert abs(total - bound) < 1e-9


@pytest.mark.parametrize("k", [1, 2, 3])
def test_mub_index_inequality(k, rng):
    bases = prime_pauli_mubs(3)[:k]
    for _ in range(50):
        rho = random_density(3, rng).matrix
        total = sum(index_of_coincidence(probabilities(b, rho)) for b in bases)
        assert total <= 1 + (k - 1) / 3 + 1e-12


def test_eta_examples():
    z = computational_basis(2)
    assert eta(z, z) == pytest.approx(1.0)
    assert eta(*qubit_pauli_mubs()[:2]) == pytest.approx(1 / math.sqrt(2))
    for th in (0.3, math.pi / 6, 1.2):
        assert eta(z, rotated_qubit_basis(th)) == pytest.approx(max(math.cos(th), math.sin(th)))


def test_eta_symmetric_and_norm(rng):
    sic = sic_povm(2)
    z = computational_basis(2)
    assert eta(sic, z) == pytest.approx(eta(z, sic))
    q = qutrit_bases()
    assert spectral_norm(overlap_matrix(q["x"], q["y"])) == pytest.approx(1.0)


def test_povm_validation_and_rejection():
    assert validate_povm(sic_povm(3)).passed
    with pytest.raises(ValueError):
        RankOnePOVM(np.array([[1, 0], [1, 0]], dtype=complex))
    with pytest.raises(ValueError):
        GeneralPOVM(np.array([np.eye(2), np.eye(2)]))


@pytest.mark.parametrize("d", [2, 3])
def test_probabilities_sum_to_one(d, rng):
    measurements = [sic_povm(d), gsic_from_sic(sic_povm(d), 0.7).povm, *prime_pauli_mubs(d)]
    for _ in range(20):
        rho = validate_density(random_density(d, rng).matrix)
        for m in measurements:
            assert abs(probabilities(m, rho).sum() - 1) < 1e-9
