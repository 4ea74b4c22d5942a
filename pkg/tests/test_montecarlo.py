import math
from collections import Counter

import numpy as np
import pytest

from involution_occ.asymptotic import average_log
from involution_occ.core import canonical_involution, validate_involution
from involution_occ.errors import RangeError
from involution_occ.exact import average_exact
from involution_occ.montecarlo import (
    estimate,
    mix_seed,
    sample_half,
    sample_vector,
    splitmix64,
)


def test_splitmix_reference_value():
    # first output of the reference SplitMix64 stream seeded with 0
    assert splitmix64(0) == 0xE220A8397B1DCDAF
    assert mix_seed(1, 0) != mix_seed(1, 1) != mix_seed(2, 1)


def test_sample_vector_deterministic():
    psi = validate_involution(2, [1, 0])
    x = sample_vector(psi, 12345)
    assert x.as_tuple() in {(0, 1), (1, 0)}
    assert sample_vector(psi, 12345) == x
    big = canonical_involution(200, 10)
    y = sample_vector(big, 99)
    assert y.is_symmetric(big)
    assert y == sample_vector(big, 99)


def test_sample_uniform_over_all_vectors():
    n = 10**5
    freq = Counter(tuple(sample_half(4, mix_seed(3, t))) for t in range(n))
    assert len(freq) == 16
    p = 1 / 16
    se = math.sqrt(p * (1 - p) / n)
    for c in freq.values():
        assert abs(c / n - p) < 5 * se
    chi2 = sum((c - n * p) ** 2 / (n * p) for c in freq.values())
    assert chi2 < 45.0  # df = 15, far beyond the 0.999 quantile (37.7)


def test_estimate_small_mean():
    s = estimate(canonical_involution(4, 0), 1, 10**5, seed=11)
    assert abs(s.stat(1).mean_ratio - 0.5) < 5 * s.standard_error(1)


def test_estimate_m1000_mean():
    s = estimate(canonical_involution(1000, 0), 0, 10**4, seed=2)
    target = average_log(1000, 0, 0)
    assert target == pytest.approx(0.36751, abs=5e-6)
    assert abs(s.stat(0).mean_ratio - target) < 5 * s.standard_error(0)


def test_window_one_catches_everything():
    s = estimate(canonical_involution(20, 4), 20, 200, seed=0, window=1.0)
    assert all(k.within_window_fraction == 1.0 for k in s.per_k)


def test_converges_to_oracle_means():
    m, f = 6, 2
    s = estimate(canonical_involution(m, f), m, 10**5, seed=21)
    assert math.fsum(k.mean_ratio for k in s.per_k) == pytest.approx(1.0, abs=1e-12)
    for k in range(m + 1):
        exact = float(average_exact(m, f, k))
        se = s.standard_error(k)
        if se == 0:
            assert s.stat(k).mean_ratio == exact
        else:
            assert abs(s.stat(k).mean_ratio - exact) < 5 * se


def test_independent_of_jobs():
    psi = canonical_involution(50, 6)
    one = estimate(psi, 4, 301, seed=77, jobs=1)
    many = estimate(psi, 4, 301, seed=77, jobs=4)
    assert one == many


def test_env_jobs(monkeypatch):
    monkeypatch.setenv("INVOLUTION_OCC_JOBS", "2")
    psi = canonical_involution(10, 0)
    assert estimate(psi, 2, 40, seed=1) == estimate(psi, 2, 40, seed=1, jobs=1)


def test_estimate_errors():
    psi = canonical_involution(4, 0)
    with pytest.raises(RangeError):
        estimate(psi, 2, 0, seed=1)
    with pytest.raises(RangeError):
        estimate(psi, 5, 10, seed=1)
    with pytest.raises(RangeError):
        estimate(psi, 2, 10, seed=1, window=0.0)


def test_unbiased_variance_from_integer_sums():
    s = estimate(canonical_involution(8, 0), 2, 50, seed=4)
    xs = []
    from involution_occ.montecarlo import profile_counts

    psi = canonical_involution(8, 0)
    for t in range(50):
        xs.append(profile_counts(sample_vector(psi, mix_seed(4, t)).entries, 8)[1] / 8)
    assert s.stat(1).sample_variance == pytest.approx(np.var(xs, ddof=1), rel=1e-12)
    assert s.stat(1).mean_ratio == pytest.approx(np.mean(xs), rel=1e-12)
