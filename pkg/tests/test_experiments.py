"""Replica-sharded experiment runners: shapes, determinism, cross-routes."""

import math

import numpy as np
import pytest

from wignerlab.ensembles import (goe, gue, rademacher_ensemble, replica_key,
                                 sample_matrix)
from wignerlab.errors import ConfigurationError
from wignerlab.experiments import (high_trace_power, run_edge_records,
                                   run_edge_samples, run_even_trace_moments,
                                   run_high_traces, run_semicircle,
                                   run_trace_vs_linear)
from wignerlab.spectra import (eigenvalues, even_trace_moments, rescale_edges,
                               semicircle_cdf, trace_power)


def test_edge_sample_shapes_and_order():
    theta, tau = run_edge_samples(goe(), 24, 5, seed=11, k=3)
    assert theta.shape == tau.shape == (5, 3)
    # top-k columns are nonincreasing left to right, and so are bottom-k
    assert np.all(np.diff(theta, axis=1) <= 0.0)
    assert np.all(np.diff(tau, axis=1) <= 0.0)


def test_edge_samples_match_direct_replica():
    theta, tau = run_edge_samples(gue(), 20, 4, seed=5, k=2)
    m = sample_matrix(gue(), 20, replica_key(5, 2))
    edge = rescale_edges(eigenvalues(m), 2)
    np.testing.assert_array_equal(theta[2], edge.theta)
    np.testing.assert_array_equal(tau[2], edge.tau)


def test_worker_count_never_changes_results():
    one = run_edge_samples(goe(), 16, 7, seed=3, k=1, workers=1)
    two = run_edge_samples(goe(), 16, 7, seed=3, k=1, workers=2)
    np.testing.assert_array_equal(one[0], two[0])
    np.testing.assert_array_equal(one[1], two[1])
    m1 = run_even_trace_moments(goe(), 16, 6, seed=3, smax=2, workers=1)
    m3 = run_even_trace_moments(goe(), 16, 6, seed=3, smax=2, workers=3)
    np.testing.assert_array_equal(m1, m3)


def test_moment_runner_matches_direct():
    rows = run_even_trace_moments(rademacher_ensemble(), 18, 3, seed=8, smax=3)
    assert rows.shape == (3, 3)
    m = sample_matrix(rademacher_ensemble(), 18, replica_key(8, 1))
    np.testing.assert_allclose(rows[1], even_trace_moments(m, 3), rtol=1e-13)


def test_high_trace_power_formula():
    assert high_trace_power(1.0, 400) == 108
    assert high_trace_power(1.0, 30) == 2 * int(30 ** (2.0 / 3.0))
    assert high_trace_power(0.5, 1000) == 2 * int(0.5 * 1000 ** (2.0 / 3.0))


def test_high_traces_match_eigen_route():
    traces = run_high_traces(goe(), 30, 3, seed=13, t=1.0)
    p = high_trace_power(1.0, 30)
    for r in range(3):
        m = sample_matrix(goe(), 30, replica_key(13, r))
        want = trace_power(eigenvalues(m), p)
        assert traces[r] == pytest.approx(want, rel=1e-9)


def test_trace_vs_linear_runner_columns():
    rows = run_trace_vs_linear(goe(), 40, 4, seed=2, t=0.8)
    assert rows.shape == (4, 6)
    te, to, upper, lower, ru, rl = rows.T
    np.testing.assert_allclose(ru, upper - 0.5 * (te + to), atol=1e-12)
    np.testing.assert_allclose(rl, lower - 0.5 * (te - to), atol=1e-12)


def test_edge_records_embed_both_views():
    rows = run_edge_records(goe(), 40, 3, seed=6, k=2, t=0.8)
    assert rows.shape == (3, 8)
    theta, _ = run_edge_samples(goe(), 40, 3, seed=6, k=2)
    np.testing.assert_array_equal(rows[:, :2], theta)
    direct = run_trace_vs_linear(goe(), 40, 3, seed=6, t=0.8)
    np.testing.assert_array_equal(rows[:, 2:], direct)


def test_semicircle_runner():
    grid, mean, dev = run_semicircle(goe(), 300, 8, seed=17)
    assert grid.shape == mean.shape == (97,)
    assert np.all(np.diff(mean) >= 0.0)
    assert dev == pytest.approx(
        float(np.max(np.abs(mean - semicircle_cdf(grid)))))
    assert dev < 0.02
    custom = np.linspace(-1.0, 1.0, 5)
    grid2, mean2, _ = run_semicircle(goe(), 100, 4, seed=17, grid=custom)
    np.testing.assert_array_equal(grid2, custom)


def test_validation_guards():
    with pytest.raises(ConfigurationError):
        run_edge_samples(goe(), 10, 0, seed=1)
    with pytest.raises(ConfigurationError):
        run_edge_samples(goe(), 1, 5, seed=1)
    with pytest.raises(ConfigurationError):
        run_edge_samples(goe(), 10, 5, seed=1, k=11)
    with pytest.raises(ConfigurationError):
        run_high_traces(goe(), 10, 5, seed=1, t=0.0)
    with pytest.raises(ConfigurationError):
        run_trace_vs_linear(goe(), 10, 5, seed=1, t=-1.0)


def test_entry_law_shifts_the_edge_mean_at_moderate_n():
    # at n = 100 the sign-entry ensemble's rescaled largest eigenvalue sits
    # well below the gaussian one: the diagonal-variance and kurtosis
    # corrections decay only like n^{-1/3}
    reps = 400
    theta_rad, _ = run_edge_samples(rademacher_ensemble(), 100, reps, seed=91)
    theta_goe, _ = run_edge_samples(goe(), 100, reps, seed=92)
    gap = float(np.mean(theta_rad)) - float(np.mean(theta_goe))
    se = math.sqrt(float(np.var(theta_rad)) + float(np.var(theta_goe))) \
        / math.sqrt(reps)
    assert se < 0.12
    assert -0.95 < gap < -0.25
