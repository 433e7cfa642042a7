import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from entrosep.entropy import (
    INFINITY,
    alpha_log,
    as_probability,
    circulant,
    convolve,
    entropy,
    majorizes,
    norm_alpha,
    renyi,
    shannon,
    tsallis,
)
from entrosep.exceptions import DomainError, UsageError

C = 1 / math.sqrt(2)
PAIR = np.array([(1 + C) / 2, (1 - C) / 2])


def probs(min_size=2, max_size=8):
    return st.lists(st.floats(0.01, 1.0), min_size=min_size, max_size=max_size).map(
        lambda x: np.array(x) / sum(x))


def test_convolve_examples():
    assert np.allclose(convolve([1, 0], [0.3, 0.7]), [0.3, 0.7])
    assert np.allclose(convolve(np.full(4, 0.25), [0.1, 0.2, 0.3, 0.4]), 0.25)
    assert np.allclose(convolve([0.7, 0.3], [0.6, 0.4]), [0.54, 0.46])


def test_convolve_length_mismatch():
    with pytest.raises(UsageError):
        convolve([0.5, 0.5], [1, 0, 0])


def test_convolve_matches_direct_sum(rng):
    g, h = rng.dirichlet(np.ones(5)), rng.dirichlet(np.ones(5))
    direct = [sum(g[i] * h[(k - i) % 5] for i in range(5)) for k in range(5)]
    assert np.allclose(convolve(g, h), direct)


def test_norm_alpha_examples():
    assert norm_alpha(np.full(4, 0.25), 2) == pytest.approx(0.5)
    assert norm_alpha([0.2, 0.8], 1) == pytest.approx(1.0)
    assert norm_alpha(PAIR, 0.5) == pytest.approx(1 + math.sqrt(1 - C**2), abs=1e-12)
    assert norm_alpha(PAIR, INFINITY) == pytest.approx(PAIR[0])


@pytest.mark.parametrize("alpha", [0.3, 1.0, 2.0, 5.0, INFINITY])
def test_renyi_uniform_and_point(alpha):
    assert renyi(np.full(5, 0.2), alpha) == pytest.approx(math.log(5))
    assert renyi([1.0, 0, 0], alpha) == pytest.approx(0.0, abs=1e-15)


def test_renyi_infinity_value():
    # -ln((1+c)/2) evaluated directly
    assert renyi(PAIR, INFINITY) == pytest.approx(-math.log((1 + C) / 2), abs=1e-14)
    assert renyi(PAIR, INFINITY) == pytest.approx(0.158347, abs=1e-6)


def test_tsallis_examples():
    assert tsallis(np.full(3, 1 / 3), 2) == pytest.approx(1 - 1 / 3)
    assert tsallis([1.0, 0.0], 3) == pytest.approx(0.0)
    c = 1 / math.sqrt(3)
    assert tsallis([(1 + c) / 2, (1 - c) / 2], 2) == pytest.approx(1 / 3)
    with pytest.raises(UsageError):
        tsallis(PAIR, INFINITY)


def test_alpha_log_examples():
    for a in (0.5, 1.0, 2.0, 3.0):
        assert alpha_log(1.0, a) == pytest.approx(0.0)
    assert alpha_log(math.e, 1.0) == pytest.approx(1.0)
    assert alpha_log(1.5, 2.0) == pytest.approx(1 / 3)
    with pytest.raises(DomainError):
        alpha_log(0.0, 2.0)


def test_majorizes_examples():
    assert majorizes([0.5, 0.5], [1, 0])
    assert majorizes([0.54, 0.46], [0.7, 0.3])
    assert not majorizes([0.7, 0.3], [0.6, 0.4])
    assert majorizes([0.5, 0.5], [1.0])  # zero padding
    with pytest.raises(UsageError):
        majorizes([0.5, 0.5], [0.5, 0.4])


def test_clamping():
    p = as_probability([1.0 + 5e-10, -5e-10])
    assert p.min() >= 0 and p.sum() == pytest.approx(1.0)
    with pytest.raises(Exception):
        as_probability([1.1, -0.1])


def test_entropy_dispatch():
    assert entropy(PAIR, 2, "tsallis") == tsallis(PAIR, 2)
    assert entropy(PAIR, 2, "renyi") == renyi(PAIR, 2)
    with pytest.raises(UsageError):
        entropy(PAIR, 2, "bogus")


def test_order_must_be_positive():
    with pytest.raises(DomainError):
        renyi(PAIR, 0.0)


def test_convolution_contracts_norms_bulk():
    # >= 1e4 random pairs; g positive (not normalized), h normalized
    rng = np.random.default_rng(7)
    for _ in range(10_000):
        d = int(rng.integers(2, 9))
        g = rng.random(d) + 1e-3
        h = rng.dirichlet(np.ones(d))
        gh = convolve(g, h)
        for a in (1.5, 2.0, 3.0):
            assert norm_alpha(gh, a) <= norm_alpha(g, a) + 1e-10
        for b in (0.3, 0.5, 0.9):
            assert norm_alpha(gh, b) >= norm_alpha(g, b) - 1e-10


def test_convolution_majorized_by_factors_bulk():
    rng = np.random.default_rng(8)
    for _ in range(10_000):
        d = int(rng.integers(2, 9))
        p, q = rng.dirichlet(np.ones(d)), rng.dirichlet(np.ones(d))
        pq = convolve(p, q)
        assert majorizes(pq, p) and majorizes(pq, q)


@given(probs())
def test_circulant_doubly_stochastic(q):
    t = circulant(q)
    assert np.allclose(t.sum(axis=0), 1) and np.allclose(t.sum(axis=1), 1)
    p = np.roll(q, 1)
    assert np.allclose(t @ p, convolve(p, q))


@given(probs())
def test_renyi_non_increasing(p):
    grid = [0.2, 0.5, 1.0, 1.5, 2.0, 4.0, 10.0, INFINITY]
    vals = [renyi(p, a) for a in grid]
    assert all(x >= y - 1e-12 for x, y in zip(vals, vals[1:]))


@settings(max_examples=200)
@given(probs(3, 6), st.floats(0.0, 1.0), st.sampled_from([0.5, 1.0, 2.0, 3.0]))
def test_schur_concavity(b, lam, alpha):
    # averaging with a permutation gives a vector majorized by b
    a = lam * b + (1 - lam) * b[::-1]
    assert majorizes(a, b)
    assert renyi(a, alpha) >= renyi(b, alpha) - 1e-12
    assert tsallis(a, alpha) >= tsallis(b, alpha) - 1e-12


@given(probs())
def test_shannon_limit(p):
    h = shannon(p)
    assert abs(renyi(p, 1 + 1e-8) - h) < 1e-6
    assert abs(renyi(p, 1 - 1e-8) - h) < 1e-6
    assert abs(tsallis(p, 1 + 1e-8) - h) < 1e-6
