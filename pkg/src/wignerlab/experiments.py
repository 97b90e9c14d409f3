"""Replica-parallel experiment runners.

Every runner derives replica r of base seed s from the Philox key
(s, r), so results depend only on the arguments: worker count and batch
layout never change the numbers.  Workers are separate processes; shards
come back keyed by replica range and merge in index order.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from .ensembles import EnsembleSpec, replica_key, sample_matrix
from .errors import ConfigurationError
from .mcstats import trace_vs_linear
from .spectra import (eigenvalues, empirical_esd, even_trace_moments,
                      rescale_edges, semicircle_cdf)


def _chunks(replicas: int, parts: int):
    size = -(-replicas // parts)
    return [(lo, min(lo + size, replicas)) for lo in range(0, replicas, size)]


def _run_sharded(worker, args, replicas: int, workers: int):
    """Run worker(args, lo, hi) over replica ranges; concatenate in order."""
    if workers <= 1:
        return worker(args, 0, replicas)
    spans = _chunks(replicas, workers)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        shards = list(pool.map(worker, [args] * len(spans),
                               [lo for lo, _ in spans], [hi for _, hi in spans]))
    return np.concatenate(shards, axis=0)


def _edge_worker(args, lo: int, hi: int) -> np.ndarray:
    spec, n, seed, k = args
    out = np.empty((hi - lo, 2 * k))
    for r in range(lo, hi):
        m = sample_matrix(spec, n, replica_key(seed, r))
        edge = rescale_edges(eigenvalues(m, label=f"replica {r}"), k)
        out[r - lo, :k] = edge.theta
        out[r - lo, k:] = edge.tau
    return out


def run_edge_samples(spec: EnsembleSpec, n: int, replicas: int, seed: int,
                     k: int = 1, workers: int = 1):
    """(replicas, k) arrays of rescaled top and bottom eigenvalues."""
    _validate(n, replicas)
    if not 1 <= k <= n:
        raise ConfigurationError("need 1 <= k <= n")
    flat = _run_sharded(_edge_worker, (spec, n, seed, k), replicas, workers)
    return flat[:, :k].copy(), flat[:, k:].copy()


def _moment_worker(args, lo: int, hi: int) -> np.ndarray:
    spec, n, seed, smax = args
    out = np.empty((hi - lo, smax))
    for r in range(lo, hi):
        m = sample_matrix(spec, n, replica_key(seed, r))
        out[r - lo] = even_trace_moments(m, smax)
    return out


def run_even_trace_moments(spec: EnsembleSpec, n: int, replicas: int,
                           seed: int, smax: int, workers: int = 1) -> np.ndarray:
    """(replicas, smax) array of Trace A^{2s}, s = 1..smax."""
    _validate(n, replicas)
    return _run_sharded(_moment_worker, (spec, n, seed, smax), replicas, workers)


def _trace_binpow(a: np.ndarray, p: int) -> float:
    result = None
    base = a
    while p:
        if p & 1:
            result = base if result is None else result @ base
        base = base @ base
        p >>= 1
    return float(np.trace(result).real)


def high_trace_power(t: float, n: int) -> int:
    return 2 * int(math.floor(t * n ** (2.0 / 3.0)))


def _high_trace_worker(args, lo: int, hi: int) -> np.ndarray:
    spec, n, seed, p = args
    out = np.empty(hi - lo)
    for r in range(lo, hi):
        m = sample_matrix(spec, n, replica_key(seed, r))
        out[r - lo] = _trace_binpow(m, p)
    return out


def run_high_traces(spec: EnsembleSpec, n: int, replicas: int, seed: int,
                    t: float, workers: int = 1) -> np.ndarray:
    """Trace A^{2 floor(t n^{2/3})} per replica, by binary matrix powers."""
    _validate(n, replicas)
    if t <= 0:
        raise ConfigurationError("need t > 0")
    p = high_trace_power(t, n)
    return _run_sharded(_high_trace_worker, (spec, n, seed, p), replicas, workers)


def _edge_record_worker(args, lo: int, hi: int) -> np.ndarray:
    spec, n, seed, k, t = args
    out = np.empty((hi - lo, k + 6))
    for r in range(lo, hi):
        m = sample_matrix(spec, n, replica_key(seed, r))
        sp = eigenvalues(m, label=f"replica {r}")
        out[r - lo, :k] = rescale_edges(sp, k).theta
        c = trace_vs_linear(sp, t)
        out[r - lo, k:] = (c.trace_even, c.trace_odd, c.upper, c.lower,
                           c.residual_upper, c.residual_lower)
    return out


def run_edge_records(spec: EnsembleSpec, n: int, replicas: int, seed: int,
                     k: int, t: float, workers: int = 1) -> np.ndarray:
    """Per-replica rows: theta_1..theta_k, then the trace and linear-statistic
    columns of trace_vs_linear (even/odd trace, upper/lower statistic, the two
    residuals)."""
    _validate(n, replicas)
    if not 1 <= k <= n:
        raise ConfigurationError("need 1 <= k <= n")
    if t <= 0:
        raise ConfigurationError("need t > 0")
    return _run_sharded(_edge_record_worker, (spec, n, seed, k, t),
                        replicas, workers)


def _trace_linear_worker(args, lo: int, hi: int) -> np.ndarray:
    spec, n, seed, t = args
    out = np.empty((hi - lo, 6))
    for r in range(lo, hi):
        m = sample_matrix(spec, n, replica_key(seed, r))
        c = trace_vs_linear(eigenvalues(m, label=f"replica {r}"), t)
        out[r - lo] = (c.trace_even, c.trace_odd, c.upper, c.lower,
                       c.residual_upper, c.residual_lower)
    return out


def run_trace_vs_linear(spec: EnsembleSpec, n: int, replicas: int, seed: int,
                        t: float, workers: int = 1) -> np.ndarray:
    """Columns: trace_even, trace_odd, S_upper, S_lower, res_upper, res_lower."""
    _validate(n, replicas)
    if t <= 0:
        raise ConfigurationError("need t > 0")
    return _run_sharded(_trace_linear_worker, (spec, n, seed, t), replicas, workers)


def _esd_worker(args, lo: int, hi: int) -> np.ndarray:
    spec, n, seed, grid = args
    out = np.empty((hi - lo, len(grid)))
    for r in range(lo, hi):
        m = sample_matrix(spec, n, replica_key(seed, r))
        out[r - lo] = empirical_esd(eigenvalues(m, label=f"replica {r}"), grid)
    return out


def run_semicircle(spec: EnsembleSpec, n: int, replicas: int, seed: int,
                   grid=None, workers: int = 1):
    """(grid, mean empirical spectral CDF, max deviation from semicircle)."""
    _validate(n, replicas)
    if grid is None:
        grid = np.linspace(-1.2, 1.2, 97)
    grid = np.asarray(grid, dtype=float)
    curves = _run_sharded(_esd_worker, (spec, n, seed, grid), replicas, workers)
    mean = curves.mean(axis=0)
    dev = float(np.max(np.abs(mean - semicircle_cdf(grid))))
    return grid, mean, dev


def _validate(n: int, replicas: int):
    if replicas < 1:
        raise ConfigurationError("need at least one replica")
    if n < 2:
        raise ConfigurationError("need matrix dimension n >= 2")
