import numpy as np
import pytest

from fracmom import (
    BASELINE_IDS,
    huber_location,
    median_of_means,
    parse_spec,
    run_baseline,
    sample,
    trimmed_mean,
    winsorized_mean,
)

OUTLIER_SAMPLE = np.array([1.0, 2.0, 3.0, 4.0, 100.0])


class TestTrimmedMean:
    def test_outlier_example(self):
        assert trimmed_mean(OUTLIER_SAMPLE, 0.2) == pytest.approx(3.0)

    def test_zero_fraction_is_mean(self):
        x = np.array([1.0, 5.0, -2.0, 8.0])
        assert trimmed_mean(x, 0.0) == pytest.approx(float(np.mean(x)), abs=0)

    def test_invalid_fraction(self):
        with pytest.raises(ValueError):
            trimmed_mean(OUTLIER_SAMPLE, 0.5)


class TestWinsorizedMean:
    def test_outlier_example(self):
        # clamps to {2,2,3,4,4}
        assert winsorized_mean(OUTLIER_SAMPLE, 0.2) == pytest.approx(3.0)

    def test_zero_fraction_is_mean(self):
        x = np.array([3.0, 1.0, 7.0])
        assert winsorized_mean(x, 0.0) == pytest.approx(float(np.mean(x)), abs=0)

    def test_symmetric_sample_fixed_point(self):
        x = np.array([-3.0, -1.0, 0.0, 1.0, 3.0])
        assert winsorized_mean(x, 0.2) == pytest.approx(0.0, abs=1e-15)

    def test_input_not_mutated(self):
        x = OUTLIER_SAMPLE.copy()
        winsorized_mean(x, 0.2)
        assert np.array_equal(x, OUTLIER_SAMPLE)


class TestHuberLocation:
    def test_symmetric_sample(self):
        assert huber_location([-1.0, 0.0, 1.0]) == pytest.approx(0.0, abs=1e-12)

    def test_huge_tuning_recovers_mean(self):
        x = np.array([1.0, 2.0, 3.0, 4.0, 100.0])
        assert huber_location(x, tuning_c=1e9) == pytest.approx(
            float(np.mean(x)), rel=1e-9)

    def test_zero_mad_returns_median(self):
        assert huber_location([5.0, 5.0, 5.0, 9.0]) == 5.0

    def test_against_brute_force_loss_minimizer(self):
        # oracle: dense grid minimization of the Huber loss with the same
        # fixed scale
        x = OUTLIER_SAMPLE
        c = 1.345
        s = 1.4826 * np.median(np.abs(x - np.median(x)))
        k = c * s

        def loss(mu):
            r = np.abs(x[None, :] - mu[:, None])
            return np.where(r <= k, 0.5 * r * r, k * (r - 0.5 * k)).sum(axis=1)

        grid = np.linspace(0.0, 10.0, 2_000_001)
        oracle = grid[np.argmin(loss(grid))]
        assert huber_location(x, c) == pytest.approx(oracle, abs=1e-4)

    def test_invalid_tuning(self):
        with pytest.raises(ValueError):
            huber_location([1.0, 2.0], tuning_c=0.0)


class TestMedianOfMeans:
    def test_contiguous_blocking_example(self):
        # groups {1,2}, {3,4}, {100} -> means {1.5, 3.5, 100} -> median 3.5
        assert median_of_means(OUTLIER_SAMPLE, 3) == pytest.approx(3.5)

    def test_single_block_is_mean(self):
        assert median_of_means(OUTLIER_SAMPLE, 1) == pytest.approx(
            float(np.mean(OUTLIER_SAMPLE)))

    def test_n_blocks_is_median(self):
        assert median_of_means(OUTLIER_SAMPLE, 5) == pytest.approx(
            float(np.median(OUTLIER_SAMPLE)))

    def test_default_block_count(self):
        x = sample(parse_spec("laplace"), 100, 1)
        assert median_of_means(x) == pytest.approx(median_of_means(x, 10))

    def test_deterministic_for_fixed_order(self):
        x = sample(parse_spec("gg:1.5"), 64, 9)
        assert median_of_means(x, 8) == median_of_means(x, 8)

    def test_block_validation(self):
        with pytest.raises(ValueError):
            median_of_means(OUTLIER_SAMPLE, 0)
        with pytest.raises(ValueError):
            median_of_means(OUTLIER_SAMPLE, 6)


class TestDispatch:
    def test_examples(self):
        assert run_baseline("median", OUTLIER_SAMPLE) == pytest.approx(3.0)
        assert run_baseline("mean", [1.0, 2.0, 3.0]) == pytest.approx(2.0)

    def test_all_ids_run(self):
        x = sample(parse_spec("laplace"), 40, 4)
        for name in BASELINE_IDS:
            assert np.isfinite(run_baseline(name, x))

    def test_unknown_id(self):
        with pytest.raises(ValueError):
            run_baseline("mode", [1.0, 2.0])

    def test_translation_and_negation_invariance(self):
        x = sample(parse_spec("gg:1.5"), 101, 13)
        for name in BASELINE_IDS:
            base = run_baseline(name, x)
            assert run_baseline(name, x + 9.75) == pytest.approx(
                base + 9.75, abs=1e-12)
            assert run_baseline(name, -x) == pytest.approx(-base, abs=1e-12)
