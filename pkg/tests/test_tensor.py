from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import cubefourier as cf
from cubefourier.errors import InputError


def test_product_multiplies_sign_values():
    f = cf.majority(3)
    g = cf.dictator(2, 1)
    prod = cf.tensor_product(f, g)
    assert prod.n == 5
    for mask in range(32):
        assert prod.value(mask) == f.value(mask & 0b111) * g.value(mask >> 3)


def test_product_spectrum_is_the_outer_product():
    f = cf.majority(3)
    g = cf.mux3()
    sf = cf.exact_transform(f)
    sg = cf.exact_transform(g)
    sp = cf.exact_transform(cf.tensor_product(f, g))
    for s in range(1 << 6):
        lo, hi = s & 0b111, s >> 3
        assert sp.coefficient(s) == sf.coefficient(lo) * sg.coefficient(hi)


@given(st.integers(0, 200), st.integers(0, 200), st.sampled_from([0.5, 0.3]))
def test_entropy_and_influence_are_additive(seed_a, seed_b, p):
    f = cf.random_function(3, seed_a)
    g = cf.random_function(2, seed_b)
    sf, sg = cf.transform(f, p), cf.transform(g, p)
    sp = cf.transform(cf.tensor_product(f, g), p)
    assert cf.spectral_entropy(sp) == pytest.approx(
        cf.spectral_entropy(sf) + cf.spectral_entropy(sg), abs=1e-9
    )
    assert cf.total_influence_spectral(sp) == pytest.approx(
        cf.total_influence_spectral(sf) + cf.total_influence_spectral(sg), abs=1e-9
    )


def test_dictator_squares_to_parity():
    prod = cf.tensor_product(cf.dictator(1, 1), cf.dictator(1, 1))
    assert prod == cf.parity(2, 0b11)


def test_product_with_constant_keeps_the_spectrum():
    f = cf.majority(3)
    prod = cf.tensor_product(f, cf.constant(2, 1))
    sp, sf = cf.transform(prod), cf.transform(f)
    assert cf.spectral_entropy(sp) == pytest.approx(cf.spectral_entropy(sf), abs=1e-12)
    assert cf.total_influence_spectral(sp) == pytest.approx(
        cf.total_influence_spectral(sf), abs=1e-12
    )


def test_power_one_is_identity():
    f = cf.majority(3)
    assert cf.tensor_power(f, 1) == f


def test_virtual_power_one_matches_direct_analysis():
    f = cf.random_function(4, 23)
    stats = cf.virtual_power_stats(f, 1, p=0.3)
    sp = cf.transform(f, 0.3)
    assert stats.entropy == pytest.approx(cf.spectral_entropy(sp), abs=1e-12)
    assert stats.total_influence == pytest.approx(
        cf.total_influence_spectral(sp), abs=1e-12
    )
    assert np.array_equal(stats.profile.weights, cf.level_profile(sp).weights)


def test_virtual_stats_match_explicit_power():
    f = cf.majority(3)
    stats = cf.virtual_power_stats(f, 2)
    sp = cf.transform(cf.tensor_power(f, 2))
    assert stats.entropy == pytest.approx(cf.spectral_entropy(sp), abs=1e-10)
    assert stats.total_influence == pytest.approx(
        cf.total_influence_spectral(sp), abs=1e-10
    )
    prof = cf.level_profile(sp)
    assert np.max(np.abs(stats.profile.weights - prof.weights)) < 1e-10


def test_exact_virtual_profile_of_majority3_squared():
    stats = cf.virtual_power_stats(cf.majority(3), 2, exact=True)
    assert stats.profile.exact == (
        Fraction(0),
        Fraction(0),
        Fraction(9, 16),
        Fraction(0),
        Fraction(3, 8),
        Fraction(0),
        Fraction(1, 16),
    )
    assert stats.profile.tail(2) == pytest.approx(7 / 16, abs=1e-15)


@given(st.integers(1, 20))
def test_ratio_is_invariant_under_powers(N):
    f = cf.majority(3)
    stats = cf.virtual_power_stats(f, N)
    assert stats.ei_ratio == pytest.approx(4 / 3, abs=1e-9)


@given(st.integers(1, 20), st.integers(0, 100))
def test_mean_level_scales_linearly(N, seed):
    f = cf.random_function(3, seed)
    base = cf.virtual_power_stats(f, 1)
    stats = cf.virtual_power_stats(f, N)
    assert stats.mean_level() == pytest.approx(N * base.mean_level(), rel=1e-9, abs=1e-9)
    assert stats.level_variance() == pytest.approx(
        N * base.level_variance(), rel=1e-9, abs=1e-9
    )


def test_tail_decay_matches_profile_tails():
    stats = cf.virtual_power_stats(cf.majority(3), 3)
    decay = cf.tail_decay(stats.profile)
    for k in range(stats.n + 1):
        assert decay[k] == pytest.approx(stats.profile.tail(k), abs=1e-12)


@given(st.integers(0, 100), st.integers(1, 12))
def test_tail_decay_is_monotone_and_exhausts(seed, N):
    stats = cf.virtual_power_stats(cf.random_function(3, seed), N)
    decay = cf.tail_decay(stats.profile)
    assert bool(np.all(np.diff(decay) <= 1e-12))
    assert decay[stats.n] == 0.0   # nothing lives above level N*n


def test_exact_mode_requires_uniform_measure():
    with pytest.raises(InputError):
        cf.virtual_power_stats(cf.majority(3), 2, p=0.3, exact=True)


def test_power_needs_positive_exponent():
    with pytest.raises(InputError):
        cf.tensor_power(cf.majority(3), 0)
    with pytest.raises(InputError):
        cf.virtual_power_stats(cf.majority(3), 0)


def test_profile_convolution_agrees_with_float_path():
    f = cf.random_function(4, 17)
    base = cf.level_profile(cf.transform(f))
    twice = cf.profile_power(base, 2)
    explicit = cf.level_profile(cf.transform(cf.tensor_power(f, 2)))
    assert np.max(np.abs(twice.weights - explicit.weights)) < 1e-12
