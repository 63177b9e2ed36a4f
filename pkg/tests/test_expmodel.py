"""Order-statistic closed forms, stable quantiles, and the spacings simulator."""

from __future__ import annotations

import math
import random
from fractions import Fraction

import numpy as np
import pytest
import scipy.stats

from primegaps import (
    EULER_GAMMA,
    ExpParams,
    exp_moment,
    large_dev_tail,
    max_order_cdf,
    max_order_mean_asym,
    max_order_quantile,
    max_order_sf,
    max_order_var_asym,
    min_order_quantile,
    order_stat_mean,
    order_stat_var,
    simulate_spacings,
    simulate_uniform_spacings,
    uptail_quantile_asym,
)
from primegaps.expmodel import ZETA2

import oracles


def test_exp_moment_small_orders():
    assert exp_moment(1, 2.0) == pytest.approx(0.5, rel=1e-15)
    assert exp_moment(2, 1.0) == pytest.approx(2.0, rel=1e-15)
    assert exp_moment(4, 1.0) == pytest.approx(24.0, rel=1e-15)
    # non-integer order goes through the gamma function
    assert exp_moment(0.5, 1.0) == pytest.approx(math.gamma(1.5), rel=1e-14)


def test_exp_moment_scaling_law():
    # scaling a rate-lambda variable by c yields rate lambda/c
    rng = random.Random(42)
    for _ in range(20):
        c = rng.uniform(0.1, 10.0)
        lam = rng.uniform(0.1, 10.0)
        for k in (1, 2, 3, 4):
            scaled = exp_moment(k, lam / c)
            assert scaled == pytest.approx(c**k * exp_moment(k, lam), rel=1e-12)


@pytest.mark.parametrize("i, n", [(1, 1), (1, 10), (5, 10), (10, 10), (1, 9999), (5000, 10**4), (10**4, 10**4)])
def test_order_stat_mean_matches_brute_force(i, n):
    got = order_stat_mean(i, n, 0.7)
    assert got == pytest.approx(oracles.order_stat_mean_exact(i, n, 0.7), rel=1e-13)


@pytest.mark.parametrize("i, n", [(1, 1), (3, 7), (7, 7), (50, 60)])
def test_order_stat_var_matches_exact_rationals(i, n):
    lam = 1.3
    expected = (oracles.harmonic2(n) - oracles.harmonic2(n - i)) / Fraction(13, 10) ** 2
    assert order_stat_var(i, n, lam) == pytest.approx(float(expected), rel=1e-12)


def test_order_stat_bounds_checked():
    with pytest.raises(ValueError):
        order_stat_mean(0, 5, 1.0)
    with pytest.raises(ValueError):
        order_stat_mean(6, 5, 1.0)
    with pytest.raises(ValueError):
        order_stat_var(1, 0, 1.0)


def test_spacing_telescoping():
    # E X_(i+1) - E X_(i) = 1 / (lambda (n - i)); the top spacing is 1/lambda
    lam = 2.5
    for n, i in ((10, 3), (100, 99), (10**4, 1)):
        step = order_stat_mean(i + 1, n, lam) - order_stat_mean(i, n, lam)
        assert step == pytest.approx(1.0 / (lam * (n - i)), rel=1e-12)
    top = order_stat_mean(100, 100, lam) - order_stat_mean(99, 100, lam)
    assert top == pytest.approx(1.0 / lam, rel=1e-12)


@pytest.mark.parametrize("n", [1, 2, 10, 100, 12345, 10**5, 10**6, 10**7])
def test_harmonic_asymptotic_error_band(n):
    h_n = order_stat_mean(n, n, 1.0)
    assert abs(h_n - math.log(n) - EULER_GAMMA) < 1 / (2 * n) + 1e-12


def test_sum_tiers_agree_across_the_crossover():
    n = 10**7 + 10
    direct = float(np.sum(1.0 / np.arange(1, n + 1, dtype=np.float64)))
    assert order_stat_mean(n, n, 1.0) == pytest.approx(direct, rel=1e-12)
    direct2 = float(np.sum(1.0 / np.arange(1, n + 1, dtype=np.float64) ** 2))
    assert order_stat_var(n, n, 1.0) == pytest.approx(direct2, rel=1e-12)


def test_quantile_cdf_round_trip_random():
    rng = random.Random(9)
    for _ in range(50):
        q = rng.uniform(1e-6, 1 - 1e-6)
        lam = rng.uniform(0.01, 100.0)
        # textbook power form: fine while n * eps stays below the tolerance
        n = rng.randrange(1, 10**5)
        y = max_order_quantile(q, ExpParams(n=n, rate=lam))
        back = (1.0 - math.exp(-lam * y)) ** n
        assert back == pytest.approx(1.0 - q, abs=1e-10)
        # stable cdf: holds even where the naive power cannot
        n = rng.randrange(1, 10**9)
        params = ExpParams(n=n, rate=lam)
        y = max_order_quantile(q, params)
        assert max_order_cdf(y, params) == pytest.approx(1.0 - q, abs=1e-10)


def test_min_quantile_round_trip():
    rng = random.Random(10)
    for _ in range(50):
        q = rng.uniform(1e-6, 1 - 1e-6)
        params = ExpParams(n=rng.randrange(1, 10**9), rate=rng.uniform(0.01, 100.0))
        y = min_order_quantile(q, params)
        # the minimum of n exponentials is Exp(n * rate)
        back = math.exp(-params.n * params.rate * y)
        assert back == pytest.approx(q, abs=1e-10)


def test_survival_function_is_relatively_accurate_in_the_far_tail():
    params = ExpParams(n=10**6, rate=1.0)
    for q in (1e-3, 1e-9, 1e-14):
        y = max_order_quantile(q, params)
        assert max_order_sf(y, params) == pytest.approx(q, rel=1e-12)


def test_cdf_sf_complementarity():
    params = ExpParams(n=1000, rate=0.5)
    for y in (0.5, 3.0, 10.0, 25.0):
        assert max_order_cdf(y, params) + max_order_sf(y, params) == pytest.approx(1.0, abs=1e-12)
    assert max_order_sf(-1.0, params) == 1.0
    assert max_order_cdf(-1.0, params) == 0.0


def test_quantile_rejects_degenerate_probabilities():
    params = ExpParams(n=10, rate=1.0)
    for q in (0.0, 1.0, -0.1, 1.1):
        with pytest.raises(ValueError):
            max_order_quantile(q, params)
        with pytest.raises(ValueError):
            min_order_quantile(q, params)


def test_exp_params_validation():
    with pytest.raises(ValueError):
        ExpParams(n=0, rate=1.0)
    with pytest.raises(ValueError):
        ExpParams(n=5, rate=0.0)
    with pytest.raises(ValueError):
        ExpParams(n=5, rate=-2.0)


def test_max_mean_asymptotic_at_desk_scale():
    # E X_(n) with rate 1/log n approaches (log n)(gamma + log n)
    n = 10**6
    exact = order_stat_mean(n, n, 1.0 / math.log(n))
    assert abs(exact - max_order_mean_asym(n)) / math.log(n) ** 2 < 1e-6


def test_max_var_asymptotic_constant():
    n = 10**8
    exact = order_stat_var(n, n, 1.0 / math.log(n))
    assert exact / math.log(n) ** 2 == pytest.approx(ZETA2, rel=1e-6)
    assert max_order_var_asym(n) == pytest.approx(ZETA2 * math.log(n) ** 2, rel=1e-12)


def test_uptail_quantile_tracks_its_asymptote():
    n = 10**6
    params = ExpParams(n=n, rate=1.0 / math.log(n))
    exact = max_order_quantile(1.0 / n, params)
    assert exact == pytest.approx(uptail_quantile_asym(n, n), rel=0.02)
    assert uptail_quantile_asym(n, n) == pytest.approx(2 * math.log(n) ** 2, rel=1e-12)


def test_large_dev_tail_validation():
    with pytest.raises(ValueError):
        large_dev_tail(0.5, 1.0, 10)
    with pytest.raises(ValueError):
        large_dev_tail(2.0, 0.0, 10)
    with pytest.raises(ValueError):
        large_dev_tail(2.0, 1.0, 0)


def test_large_dev_tail_is_log_scale_accurate():
    # exact P(mean of 10 Exp(1) > 2) from the Erlang series
    exact = oracles.erlang_upper_tail(10, 20.0)
    approx = large_dev_tail(2.0, 1.0, 10)
    ratio = math.log(approx) / math.log(exact)
    assert 0.5 <= ratio <= 2.0


def test_spacings_sample_shape_and_normalisation():
    sample = simulate_spacings(1000, seed=7)
    assert sample.n == 1000
    assert sample.spacings.size == 1000
    assert np.all(sample.spacings > 0)
    assert float(sample.spacings.sum()) == pytest.approx(1.0, abs=1e-12)
    assert sample.generator == "numpy-pcg64"
    with pytest.raises(ValueError):
        sample.spacings[0] = 0.5


def test_spacings_reproducible_by_seed():
    a = simulate_spacings(100, seed=3)
    b = simulate_spacings(100, seed=3)
    c = simulate_spacings(100, seed=4)
    assert np.array_equal(a.spacings, b.spacings)
    assert not np.array_equal(a.spacings, c.spacings)


def test_uniform_spacings_shape():
    spaced = simulate_uniform_spacings(500, seed=1)
    assert spaced.size == 500
    assert np.all(spaced > 0)
    assert float(spaced.sum()) == pytest.approx(1.0, abs=1e-12)


def test_simulators_reject_empty_samples():
    with pytest.raises(ValueError):
        simulate_spacings(0, seed=1)
    with pytest.raises(ValueError):
        simulate_uniform_spacings(0, seed=1)


def test_normalised_exponentials_match_uniform_spacings_distribution():
    n = 10**4
    exp_sp = simulate_spacings(n, seed=2026).spacings
    uni_sp = simulate_uniform_spacings(n, seed=4052)
    stat = scipy.stats.ks_2samp(exp_sp, uni_sp).statistic
    critical_1pct = 1.6276 * math.sqrt(2.0 / n)
    assert stat < critical_1pct
