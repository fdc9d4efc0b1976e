import math

import numpy as np
import pytest

from recparts.oracle import count_d, enumerate_partitions
from recparts.sampler import (
    BudgetExhaustedError,
    SamplerConfig,
    expected_weight,
    inclusion_probabilities,
    q_of_n,
    sample_batch,
    sample_exact,
    sample_free,
    truncation_cutoff,
    weight_variance,
    _rng_for_draw,
)


class TestQofN:
    def test_values(self):
        assert q_of_n(1) == pytest.approx(math.exp(-math.pi / math.sqrt(12)), abs=1e-15)
        assert q_of_n(1) == pytest.approx(0.403774, abs=1e-5)
        assert q_of_n(2000) == pytest.approx(0.979925, abs=1e-5)

    def test_monotone_to_one(self):
        qs = [q_of_n(n) for n in (1, 10, 100, 10**4, 10**8)]
        assert all(a < b for a, b in zip(qs, qs[1:]))
        assert qs[-1] < 1.0


class TestTruncation:
    @pytest.mark.parametrize("n", [1, 50, 2000, 10**5])
    def test_tail_bound_holds(self, n):
        q = q_of_n(n)
        K = truncation_cutoff(q, 1e-12)
        assert q ** (K + 1) / (1 - q) <= 1e-12
        if K > 0:
            assert q**K / (1 - q) > 1e-12  # minimality

    def test_probs_truncated_at_n_in_exact_mode(self):
        free = inclusion_probabilities(SamplerConfig(n=20, mode="free"))
        exact = inclusion_probabilities(SamplerConfig(n=20, mode="exact"))
        assert exact.size == 20
        assert np.array_equal(exact, free[:20])


class TestConfig:
    def test_validation(self):
        with pytest.raises(ValueError):
            SamplerConfig(n=0)
        with pytest.raises(ValueError):
            SamplerConfig(n=5, mode="bogus")
        with pytest.raises(ValueError):
            SamplerConfig(n=5, truncation_tail=0.0)
        with pytest.raises(ValueError):
            SamplerConfig(n=5, rejection_budget=0)


class TestFreeSampling:
    def test_deterministic_given_seed(self):
        cfg = SamplerConfig(n=2000, seed=7)
        a = sample_free(cfg, _rng_for_draw(7, 0))
        b = sample_free(cfg, _rng_for_draw(7, 0))
        assert a.parts == b.parts

    def test_batch_deterministic_and_worker_independent(self):
        cfg = SamplerConfig(n=500, seed=11)
        one = sample_batch(cfg, 60, workers=1)
        two = sample_batch(cfg, 60, workers=3)
        assert [p.parts for p in one.partitions] == [p.parts for p in two.partitions]

    def test_mean_weight_calibration(self):
        # direct-summation oracle for the free-weight mean and variance
        n = 1000
        q = q_of_n(n)
        mu, sigma = expected_weight(q), math.sqrt(weight_variance(q))
        cfg = SamplerConfig(n=n, seed=123)
        M = 10**4
        batch = sample_batch(cfg, M)
        mean = np.mean([p.weight for p in batch.partitions])
        assert abs(mean - mu) <= 3 * sigma / math.sqrt(M)
        assert abs(mu - n) <= 0.05 * n  # the O(sqrt n) correction

    def test_part_inclusion_marginals(self):
        n, M = 1000, 10**5
        cfg = SamplerConfig(n=n, seed=5)
        probs = inclusion_probabilities(cfg)
        freq = np.zeros(3)
        targets = [1, 10, 50]
        for i in range(M):
            p = sample_free(cfg, _rng_for_draw(cfg.seed, i))
            parts = set(p.parts)
            for j, k in enumerate(targets):
                freq[j] += k in parts
        freq /= M
        for j, k in enumerate(targets):
            pk = probs[k - 1]
            assert abs(freq[j] - pk) <= 4 * math.sqrt(pk * (1 - pk) / M)


class TestExactSampling:
    def test_n1_always_unit(self):
        cfg = SamplerConfig(n=1, mode="exact", seed=3)
        for i in range(20):
            assert sample_exact(cfg, _rng_for_draw(3, i)).parts == (1,)

    def test_weights_all_n(self):
        cfg = SamplerConfig(n=30, mode="exact", seed=9)
        batch = sample_batch(cfg, 50)
        assert all(p.weight == 30 for p in batch.partitions)
        assert batch.attempts_used >= 50

    def test_budget_exhausted(self):
        cfg = SamplerConfig(n=40, mode="exact", seed=0, rejection_budget=1)
        with pytest.raises(BudgetExhaustedError):
            # weight-40 hit on a single attempt is all but impossible for
            # every one of these seeds
            for i in range(10):
                sample_exact(cfg, _rng_for_draw(0, i))

    @pytest.mark.parametrize("n", [6, 10])
    def test_uniformity_tv(self, n):
        d = count_d(n)
        M = 2000 * d
        cfg = SamplerConfig(n=n, mode="exact", seed=21)
        batch = sample_batch(cfg, M)
        idx = {p.parts: i for i, p in enumerate(enumerate_partitions(n))}
        counts = np.zeros(d)
        for p in batch.partitions:
            counts[idx[p.parts]] += 1
        tv = 0.5 * np.abs(counts / M - 1 / d).sum()
        assert tv <= 0.05


class TestSmallPartsMarginals:
    def test_joint_frequencies_near_fair_coins(self):
        # the four smallest part indicators should be near-independent
        # fair coins; free-mode occupancies are exactly independent, so
        # this checks the inclusion probabilities are near 1/2
        n, M = 4000, 10**5
        q = q_of_n(n)
        k = np.arange(1, 5)
        p = q**k / (1 + q**k)
        rng = np.random.default_rng(17)
        X = rng.random((M, 4)) < p
        codes = X @ (1 << np.arange(4))
        freqs = np.bincount(codes, minlength=16) / M
        assert np.all(np.abs(freqs - 1 / 16) <= 0.02)


class TestWeightMoments:
    def test_expected_weight_examples(self):
        q = q_of_n(1000)
        assert expected_weight(q) == pytest.approx(1000, rel=0.05)
        assert expected_weight(1e-9) == pytest.approx(1e-9, rel=1e-6)

    def test_expected_weight_monotone(self):
        vals = [expected_weight(q) for q in (0.1, 0.3, 0.6, 0.9, 0.99)]
        assert all(a < b for a, b in zip(vals, vals[1:]))
