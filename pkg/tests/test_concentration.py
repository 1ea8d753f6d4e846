"""Tests for the concentration toolkit: moment bound, martingales, tails,
and the neighborhood-expansion bounds built on them.

Exact tail probabilities are recomputed against math.comb sums so the
inequality checks are compared with a combinatorially independent
oracle.
"""

import math

import numpy as np
import pytest

from noisecube.concentration import (
    BoundedDifferenceError,
    BoundedDiffSpec,
    azuma_mcdiarmid_check,
    blowing_up_check,
    blowup_corollary_check,
    doob_martingale,
    hoeffding_lemma_check,
)
from noisecube.cube import CubeSet, hamming_ball, product_measure
from noisecube.noise import NoiseSpec, trial_stream

SQRT_2LN2 = 1.1774100225154747


def test_hoeffding_fair_coin_reference():
    # U uniform on {0, 1}: E exp(U - 1/2) = cosh(1/2), bound exp(1/8)
    res = hoeffding_lemma_check([0.0, 1.0], [0.5, 0.5], 1.0)
    assert res.lhs == pytest.approx(1.1276259652063807, abs=1e-15)
    assert res.rhs == pytest.approx(1.1331484530668263, abs=1e-15)
    assert res.holds


def test_hoeffding_degenerate_and_default_span():
    res = hoeffding_lemma_check([3.0], [1.0])
    assert res.c == 0.0
    assert res.lhs == 1.0 and res.rhs == 1.0
    assert res.holds
    # the default c is the exact support span
    res = hoeffding_lemma_check([1.0, 4.0], [0.25, 0.75])
    assert res.c == 3.0


def test_hoeffding_validation():
    with pytest.raises(ValueError):
        hoeffding_lemma_check([0.0, 2.0], [0.5, 0.5], 1.0)  # span exceeds claimed c
    with pytest.raises(ValueError):
        hoeffding_lemma_check([0.0, 1.0], [0.6, 0.6])
    with pytest.raises(ValueError):
        hoeffding_lemma_check([0.0, 1.0], [0.5])


def test_hoeffding_random_instances():
    for trial in range(50):
        stream = trial_stream(21, trial)
        k = 2 + int(stream.integers(0, 6))
        values = 3.0 * stream.random(k)
        masses = stream.exponential(1.0, k)
        assert hoeffding_lemma_check(values, masses / masses.sum()).holds


def test_doob_martingale_hand_case():
    spec = BoundedDiffSpec((0.3, 0.6), (7.0, 7.0))
    trace = doob_martingale([1.0, 2.0, 4.0, 8.0], spec)
    assert len(trace.levels) == 3
    assert np.allclose(trace.levels[1], [2.8, 5.6], atol=1e-15)
    assert np.allclose(trace.levels[0], [3.64], atol=1e-15)
    assert np.allclose(trace.max_increments(), [1.96, 3.6], atol=1e-12)


def test_doob_martingale_mean_matches_weights():
    n = 6
    rng = np.random.default_rng(10)
    biases = tuple(float(b) for b in rng.uniform(0.1, 0.9, n))
    f = rng.standard_normal(1 << n)
    spec = BoundedDiffSpec(biases, (10.0,) * n)
    trace = doob_martingale(f, spec)
    from noisecube.cube import product_weights

    assert trace.levels[0][0] == pytest.approx(float(product_weights(biases) @ f), rel=1e-12)


def test_bounded_difference_witness():
    n = 4
    sums = np.bitwise_count(np.arange(1 << n, dtype=np.uint32)).astype(float)
    spec = BoundedDiffSpec.uniform(n, c=0.9)
    with pytest.raises(BoundedDifferenceError) as info:
        azuma_mcdiarmid_check(sums, spec, 1.0)
    err = info.value
    x, y = err.witness
    assert y == x | (1 << err.coord)
    assert abs(sums[x] - sums[y]) > 0.9


def test_azuma_binomial_tail_exact():
    n = 10
    sums = np.bitwise_count(np.arange(1 << n, dtype=np.uint32)).astype(float)
    spec = BoundedDiffSpec.uniform(n)
    for z in range(n + 1):
        res = azuma_mcdiarmid_check(sums, spec, float(z))
        exact = sum(math.comb(n, k) for k in range(n + 1) if k - n / 2.0 >= z) / 2.0**n
        assert res.prob == pytest.approx(exact, abs=1e-15)
        assert res.bound == pytest.approx(math.exp(-2.0 * z * z / n), rel=1e-15)
        assert res.holds


def test_azuma_biased_weights():
    n = 8
    p = 0.3
    sums = np.bitwise_count(np.arange(1 << n, dtype=np.uint32)).astype(float)
    spec = BoundedDiffSpec((p,) * n, (1.0,) * n)
    res = azuma_mcdiarmid_check(sums, spec, 2.0)
    exact = sum(
        math.comb(n, k) * p**k * (1 - p) ** (n - k)
        for k in range(n + 1)
        if k - n * p >= 2.0
    )
    assert res.prob == pytest.approx(exact, rel=1e-12)
    assert res.holds


def test_azuma_zero_span_edge():
    spec = BoundedDiffSpec((0.5, 0.5), (0.0, 0.0))
    flat = np.zeros(4)
    res = azuma_mcdiarmid_check(flat, spec, 0.0)
    assert res.bound == 1.0 and res.prob == 1.0 and res.holds
    res = azuma_mcdiarmid_check(flat, spec, 0.5)
    assert res.bound == 0.0 and res.prob == 0.0 and res.holds


def test_azuma_validation():
    spec = BoundedDiffSpec.uniform(3)
    with pytest.raises(ValueError):
        azuma_mcdiarmid_check(np.zeros(8), spec, -1.0)
    with pytest.raises(ValueError):
        azuma_mcdiarmid_check(np.zeros(4), spec, 1.0)


def test_spec_validation():
    with pytest.raises(ValueError):
        BoundedDiffSpec((0.5,) * 21, (1.0,) * 21)
    with pytest.raises(ValueError):
        BoundedDiffSpec((0.5, 1.5), (1.0, 1.0))
    with pytest.raises(ValueError):
        BoundedDiffSpec((0.5,), (-1.0,))
    with pytest.raises(ValueError):
        BoundedDiffSpec((0.5, 0.5), (1.0,))


def test_blowing_up_opposite_corners():
    # two opposite singletons at uniform measure: distance n against
    # bound n * sqrt(2 ln 2)
    n = 10
    B = CubeSet.singleton(n, 0)
    B2 = CubeSet.singleton(n, (1 << n) - 1)
    res = blowing_up_check(B, B2, [0.5] * n)
    assert res.dist == n
    assert res.mu_B == pytest.approx(2.0**-n, rel=1e-12)
    assert res.bound == pytest.approx(n * SQRT_2LN2, rel=1e-12)
    assert res.holds


def test_blowing_up_random_pairs():
    n = 10
    for trial in range(50):
        stream = trial_stream(22, trial)
        bias = list(0.1 + 0.8 * stream.random(n))
        B = CubeSet.from_indicator(n, stream.random(1 << n) < 0.1)
        B2 = CubeSet.from_indicator(n, stream.random(1 << n) < 0.1)
        if B.bits == 0 or B2.bits == 0:
            continue
        res = blowing_up_check(B, B2, bias)
        assert res.holds
        assert res.mu_B == pytest.approx(product_measure(B, bias), rel=1e-12)


def test_corollary_ball_instance():
    # radius-3 ball around the shift point is heavy under the shifted
    # product law, so its d*-neighborhood must be nearly full
    n, tau = 12, 0.1
    B = hamming_ball(n, 0, 3)
    res = blowup_corollary_check(B, NoiseSpec.uniform(tau, n), shift=0)
    assert res.d_star == min(n, math.ceil(2.0 * math.sqrt((n / 2.0) * math.log(n))))
    assert res.mu_B >= res.floor
    assert res.mu_Bd >= 1.0 - res.floor
    assert res.holds


def test_corollary_shifted_bias():
    # the measure is centered at the shift point: a ball around the
    # shift carries the same mass as a centered ball at shift 0
    n, tau, r = 10, 0.2, 2
    shift = 0b1010101010
    res0 = blowup_corollary_check(hamming_ball(n, 0, r), NoiseSpec.uniform(tau, n), 0)
    res1 = blowup_corollary_check(
        hamming_ball(n, shift, r), NoiseSpec.uniform(tau, n), shift
    )
    assert res1.mu_B == pytest.approx(res0.mu_B, rel=1e-12)
    assert res1.holds == res0.holds


def test_corollary_vacuous_below_floor():
    n = 12
    B = CubeSet.singleton(n, (1 << n) - 1)  # far corner, negligible mass
    res = blowup_corollary_check(B, NoiseSpec.uniform(0.05, n), shift=0)
    assert res.mu_B < res.floor
    assert res.holds


def test_corollary_power_parameter():
    n = 12
    B = hamming_ball(n, 0, 4)
    res = blowup_corollary_check(B, NoiseSpec.uniform(0.1, n), 0, power=2.0)
    assert res.floor == pytest.approx(float(n) ** -2.0, rel=1e-15)
    assert res.d_star == min(n, math.ceil(2.0 * math.sqrt((n / 2.0) * 2.0 * math.log(n))))
    assert res.holds


def test_corollary_validation():
    B = hamming_ball(8, 0, 2)
    with pytest.raises(ValueError):
        blowup_corollary_check(B, NoiseSpec.uniform(0.1, 8), shift=1 << 8)
    with pytest.raises(ValueError):
        blowup_corollary_check(B, NoiseSpec.uniform(0.1, 8), shift=0, power=0.0)
    with pytest.raises(ValueError):
        blowup_corollary_check(B, NoiseSpec((0.1,) * 7 + (0.2,)), shift=0)
