"""Edge-statistic estimators: CDFs, counts, truncated sums, comparisons."""

import math

import numpy as np
import pytest

from wignerlab.ensembles import goe, replica_key, sample_matrix
from wignerlab.errors import DomainError
from wignerlab.experiments import run_edge_samples, run_trace_vs_linear
from wignerlab.mcstats import (CountCollector, EmpiricalCDF, factorial_moment,
                               ks_distance, ks_two_sample, linear_statistic,
                               product_statistic, trace_vs_linear)
from wignerlab.spectra import EdgeSample, eigenvalues


def _edge(theta, n=64):
    th = np.sort(np.asarray(theta, dtype=float))[::-1]
    return EdgeSample(theta=th, tau=th.copy(), k=th.size, n=n)


def test_ecdf_evaluate_and_merge():
    e = EmpiricalCDF.from_samples([0.5, -1.0, 0.5, 2.0])
    assert e.count == 4
    assert e.evaluate(-2.0) == 0.0
    assert e.evaluate(-1.0) == 0.25
    assert e.evaluate(0.5) == 0.75
    assert e.evaluate(3.0) == 1.0
    merged = e.merge(EmpiricalCDF.from_samples([1.0]))
    assert merged.count == 5
    assert merged.evaluate(1.0) == 0.8
    with pytest.raises(DomainError):
        EmpiricalCDF.from_samples([])


def test_ks_distance_step_convention():
    # probing the left limit makes the distance against the sample's own
    # step function 1/n, never 0
    e = EmpiricalCDF.from_samples([1.0, 2.0, 4.0, 8.0])
    assert ks_distance(e, e.evaluate) == pytest.approx(0.25)
    uniform = EmpiricalCDF.from_samples(np.linspace(0.05, 0.95, 10))
    d = ks_distance(uniform, lambda x: np.clip(x, 0.0, 1.0))
    assert d == pytest.approx(0.05, abs=1e-12)


def test_ks_distance_uniform_sample():
    gen = np.random.Generator(np.random.Philox(key=7))
    e = EmpiricalCDF.from_samples(gen.random(10 ** 4))
    d = ks_distance(e, lambda x: np.clip(x, 0.0, 1.0))
    assert d == pytest.approx(0.00986, abs=5e-3)
    assert d < 0.0136  # 1.36/sqrt(n), the 5 percent band


def test_ks_self_distance_is_zero():
    e = EmpiricalCDF.from_samples([1.0, 2.0, 5.0])
    assert ks_two_sample(e, e) == 0.0
    d = ks_two_sample(e, EmpiricalCDF.from_samples([1.0, 2.0, 6.0]))
    assert d == pytest.approx(1.0 / 3.0)


def test_count_collector():
    coll = CountCollector.for_intervals([(-1.0, 0.0), (0.0, 2.0)])
    coll.record([-0.5, 0.0, 1.0, 3.0])
    coll.record([0.5])
    # interval membership is lo-exclusive, hi-inclusive
    assert coll.counts == [(2, 1), (0, 1)]
    np.testing.assert_array_equal(coll.column(0), [2.0, 0.0])
    merged = coll.merge(coll)
    assert merged.counts == coll.counts * 2
    with pytest.raises(DomainError):
        CountCollector.for_intervals([(1.0, 1.0)])
    with pytest.raises(DomainError):
        coll.merge(CountCollector.for_intervals([(0.0, 1.0)]))


def test_factorial_moments():
    counts = [0, 1, 2, 3]
    assert factorial_moment(counts, 1) == pytest.approx(1.5)
    # nu(nu-1): 0, 0, 2, 6
    assert factorial_moment(counts, 2) == pytest.approx(2.0)
    with pytest.raises(DomainError):
        factorial_moment(counts, 0)
    with pytest.raises(DomainError):
        factorial_moment([], 1)


def test_poisson_factorial_moment_identity():
    # E nu(nu-1) = lambda^2 for Poisson counts; check within 5 stderr
    lam = 1.3
    gen = np.random.Generator(np.random.Philox(key=12))
    nu = gen.poisson(lam, size=20000)
    m2 = factorial_moment(nu, 2)
    prod = nu * (nu - 1.0)
    se = float(np.std(prod)) / math.sqrt(nu.size)
    assert abs(m2 - lam * lam) < 5.0 * se


def test_linear_statistic_strict_cutoff():
    n = 64  # n^(1/6) = 2
    edge = _edge([3.0, 2.0, 1.0, -1.0], n=n)
    got = linear_statistic(edge, 1.0)
    # theta = 2 sits exactly at the cutoff and is excluded
    assert got == pytest.approx(math.exp(1.0) + math.exp(-1.0), rel=1e-14)
    below = linear_statistic(edge, 1.0, side="lower")
    assert below == got
    with pytest.raises(DomainError):
        linear_statistic(edge, 0.0)
    with pytest.raises(DomainError):
        linear_statistic(edge, 1.0, side="middle")


def test_product_statistic_matches_nested_loops():
    edge = _edge([1.5, 0.7, -0.2, -1.1, -2.4])
    th = edge.theta

    def brute(ts):
        k = len(ts)
        total = 0.0
        for idx in np.ndindex(*(th.size,) * k):
            if len(set(idx)) != k:
                continue
            total += math.exp(sum(t * th[i] for t, i in zip(ts, idx)))
        return total

    for ts in ((0.5,), (0.5, 1.0), (0.3, 0.6, 0.9), (0.2, 0.4, 0.6, 0.8)):
        assert product_statistic(edge, ts) == pytest.approx(
            brute(ts), rel=8e-13)
    with pytest.raises(DomainError):
        product_statistic(edge, ())
    with pytest.raises(DomainError):
        product_statistic(edge, (0.1,) * 5)


def test_trace_vs_linear_small_residual():
    a = sample_matrix(goe(), 400, replica_key(21, 0))
    cmp = trace_vs_linear(eigenvalues(a), 1.0)
    assert cmp.p_even == 2 * int(400 ** (2.0 / 3.0))
    assert not cmp.overflow
    assert abs(cmp.residual_upper) < 0.3
    assert abs(cmp.residual_lower) < 0.3
    # the band traces drop the same tail the cutoff drops
    assert abs(cmp.band_residual) < abs(cmp.residual_upper) + 0.3
    with pytest.raises(DomainError):
        trace_vs_linear(eigenvalues(np.zeros((4, 4))), 1.0)


def test_goe_mean_residuals_stay_small():
    # over replicas, the truncated sums track the half-sum and the
    # half-difference of the adjacent trace powers
    rows = run_trace_vs_linear(goe(), 400, 200, seed=77, t=1.0)
    res_upper = rows[:, 4]
    res_lower = rows[:, 5]
    assert abs(float(np.mean(res_upper))) < 0.1
    assert abs(float(np.mean(res_lower))) < 0.1
    # per replica the residuals are tail effects, far below the statistic
    assert float(np.max(np.abs(res_upper))) < 2.0


def test_upper_lower_statistics_share_a_law():
    # both spectral edges of the gaussian real ensemble fluctuate alike
    theta, tau = run_edge_samples(goe(), 50, 10 ** 4, seed=31, k=1)
    d = ks_two_sample(EmpiricalCDF.from_samples(theta[:, 0]),
                      EmpiricalCDF.from_samples(tau[:, 0]))
    assert d < 0.03


def test_moment_bound_scale_at_small_t():
    # E sum exp(t theta) stays within a factor 2 of t^{-3/2}/(2 sqrt pi)
    # already at n = 400 and t = 0.2
    theta, tau = run_edge_samples(goe(), 400, 200, seed=19, k=400)
    vals = []
    n16 = 400 ** (1.0 / 6.0)
    for row in theta:
        kept = row[row < n16]
        vals.append(float(np.sum(np.exp(0.2 * kept))))
    mean = float(np.mean(vals))
    bound = 0.2 ** -1.5 / (2.0 * math.sqrt(math.pi))
    assert bound / 2.0 < mean < bound * 2.0
