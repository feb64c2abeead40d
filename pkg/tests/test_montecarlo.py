import math
from dataclasses import replace

import numpy as np
import pytest

from prbox import (
    BivariateGaussian,
    CountTable,
    GaussianTwoModeState,
    MeasurementSettings,
    REFERENCE_SETTINGS,
    bell_S,
    correlation_E,
    estimate_probabilities,
    mc_bell_S,
    position_joint_density,
    postselected_probs,
    sample_pairs,
    simulate_counts,
)
from prbox.montecarlo import InsufficientCountsError, derive_setting_seed

PI = math.pi
STATE = GaussianTwoModeState(delta=0.75, gamma=1.25)
SEPARABLE = GaussianTwoModeState(delta=1.0, gamma=math.inf)
BG = BivariateGaussian(var1=1.2, var2=0.6, corr=0.45)


class TestSamplePairs:
    def test_deterministic_stream(self):
        a = sample_pairs(BG, 100, seed=11)
        b = sample_pairs(BG, 100, seed=11)
        assert np.array_equal(a, b)

    def test_different_seed_differs(self):
        assert not np.array_equal(sample_pairs(BG, 100, 1), sample_pairs(BG, 100, 2))

    def test_zero_mean(self):
        n = 400_000
        x = sample_pairs(BG, n, seed=3)
        for col, var in ((0, BG.var1), (1, BG.var2)):
            assert abs(float(np.mean(x[:, col]))) < 4.0 * math.sqrt(var / n)

    def test_sample_correlation(self):
        n = 400_000
        x = sample_pairs(BG, n, seed=4)
        rho_hat = float(np.corrcoef(x[:, 0], x[:, 1])[0, 1])
        # Fisher-z interval
        z = 0.5 * math.log((1 + rho_hat) / (1 - rho_hat))
        z0 = 0.5 * math.log((1 + BG.corr) / (1 - BG.corr))
        assert abs(z - z0) < 4.0 / math.sqrt(n - 3)

    def test_rejects_degenerate_correlation(self):
        bad = BivariateGaussian(var1=1.0, var2=1.0, corr=1.0)
        with pytest.raises(ValueError, match="too close to 1"):
            sample_pairs(bad, 10, 0)


class TestSimulateCounts:
    def test_count_table_invariant(self):
        c = simulate_counts(STATE, PI, 5 * PI / 4, 0.7, 300_000, seed=5)
        assert c.n_pp + c.n_pm + c.n_mp + c.n_mm + c.n_discarded == c.n_total

    def test_no_discards_at_r_zero(self):
        c = simulate_counts(STATE, PI, 5 * PI / 4, 0.0, 200_000, seed=6)
        assert c.n_discarded == 0

    def test_separable_quadrants_uniform(self):
        n = 1_000_000
        c = simulate_counts(SEPARABLE, 0.3, 1.1, 0.0, n, seed=7)
        for count in (c.n_pp, c.n_pm, c.n_mp, c.n_mm):
            assert abs(count - n / 4) < 4.0 * math.sqrt(n)

    def test_kept_fraction_matches_analytic(self):
        n = 1_000_000
        c = simulate_counts(STATE, PI, 5 * PI / 4, 0.8, n, seed=8)
        kf_analytic = postselected_probs(STATE, PI, 5 * PI / 4, 0.8).kept_fraction
        kf_hat = c.n_kept / n
        se = math.sqrt(kf_analytic * (1 - kf_analytic) / n)
        assert abs(kf_hat - kf_analytic) < 4.0 * se

    def test_bit_identical_under_seed_reuse(self):
        a = simulate_counts(STATE, PI, 5 * PI / 4, 0.5, 600_000, seed=9)
        b = simulate_counts(STATE, PI, 5 * PI / 4, 0.5, 600_000, seed=9)
        assert a == b

    def test_invariant_to_worker_count(self):
        kwargs = dict(alpha=PI, beta=5 * PI / 4, r=0.5, n=777_777, seed=10)
        one = simulate_counts(STATE, workers=1, **kwargs)
        four = simulate_counts(STATE, workers=4, **kwargs)
        assert one == four

    def test_estimated_kept_fraction_decreases_with_r(self):
        n = 1_000_000
        kfs = [
            simulate_counts(STATE, PI, 5 * PI / 4, r, n, seed=11).n_kept / n
            for r in (0.0, 0.25, 0.5, 0.75, 1.0, 1.5)
        ]
        assert all(a > b for a, b in zip(kfs, kfs[1:]))


class TestEstimateProbabilities:
    def test_uniform_counts(self):
        c = CountTable(250, 250, 250, 250, n_discarded=0, seed=0, n_total=1000)
        est = estimate_probabilities(c)
        for p in (est.p_pp, est.p_pm, est.p_mp, est.p_mm):
            assert p == 0.25
        assert est.se_pp == pytest.approx(0.0137, abs=2e-4)
        assert est.kept_fraction == 1.0

    def test_insufficient_counts_rejected(self):
        c = CountTable(20, 20, 20, 20, n_discarded=920, seed=0, n_total=1000)
        with pytest.raises(InsufficientCountsError, match="100"):
            estimate_probabilities(c)

    def test_marginals_near_half(self):
        c = simulate_counts(STATE, PI, 5 * PI / 4, 0.5, 1_000_000, seed=12)
        est = estimate_probabilities(c)
        se = math.sqrt(0.25 / est.n_kept)
        assert abs((est.p_pp + est.p_pm) - 0.5) < 4.0 * se
        assert abs((est.p_pp + est.p_mp) - 0.5) < 4.0 * se

    def test_probability_matrix_structure(self):
        # 4 settings x 4 outcomes, as in the coincidence experiment
        combos = [
            (REFERENCE_SETTINGS.alpha, REFERENCE_SETTINGS.beta),
            (REFERENCE_SETTINGS.alpha_prime, REFERENCE_SETTINGS.beta),
            (REFERENCE_SETTINGS.alpha, REFERENCE_SETTINGS.beta_prime),
            (REFERENCE_SETTINGS.alpha_prime, REFERENCE_SETTINGS.beta_prime),
        ]
        matrix = []
        for k, (a, b) in enumerate(combos):
            c = simulate_counts(STATE, a, b, 0.5, 200_000, derive_setting_seed(13, k))
            est = estimate_probabilities(c)
            matrix.append([est.p_pp, est.p_pm, est.p_mp, est.p_mm])
        assert len(matrix) == 4
        for row in matrix:
            assert sum(row) == pytest.approx(1.0, abs=1e-12)


class TestMcBellS:
    def test_separable_consistent_with_zero(self):
        s, se = mc_bell_S(SEPARABLE, replace(REFERENCE_SETTINGS, r=0.3), 200_000, seed=14)
        assert abs(s) < 4.0 * se

    def test_matches_analytic(self):
        rng = np.random.default_rng(99)
        for _ in range(3):
            delta = rng.uniform(0.6, 1.2)
            state = GaussianTwoModeState(delta, delta * rng.uniform(1.3, 2.5))
            settings = MeasurementSettings(
                alpha=rng.uniform(0, 2 * PI),
                alpha_prime=rng.uniform(0, 2 * PI),
                beta=rng.uniform(0, 2 * PI),
                beta_prime=rng.uniform(0, 2 * PI),
                r=rng.uniform(0.0, 1.0),
            )
            s_mc, se = mc_bell_S(state, settings, 1_000_000, seed=int(rng.integers(1 << 32)))
            assert abs(s_mc - bell_S(state, settings)) < 4.0 * se

    def test_tsirelson_violation_significant(self):
        settings = replace(REFERENCE_SETTINGS, r=2.0)
        s_mc, se = mc_bell_S(STATE, settings, 10_000_000, seed=15)
        assert s_mc - 2.0 * math.sqrt(2.0) > 5.0 * se
