"""Uniform random closed paths and their self-intersection statistics.

Here a closed path of length p is any of the n^p vertex sequences
(i_0, ..., i_{p-1}) with the closing step back to i_0; evenness is not
required.  A vertex visited exactly k times among instants 0..p-1 is a
self-intersection of order k (k >= 2), and the limit laws say the order-k
count is asymptotically Poisson with mean c^k/k! when p ~ c n^{(k-1)/k}.

The census runs vectorized over replica batches: visit multiplicities come
from per-row sorting and run lengths, the repeated-edge indicator from sorted
nonoriented edge codes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .ensembles import replica_key
from .errors import ConfigurationError, ResourceLimitError
from .paths import ClosedPath

_EXHAUSTIVE_BUDGET = 10**7
# batch rows are a pure function of p, so census results are reproducible
_BATCH_ELEMENTS = 1 << 22


@dataclass
class ToyCensus:
    """Mergeable tallies over sampled paths.

    order_hist[k][m] counts paths with exactly m vertices of order k,
    including m = 0, so each stored order's histogram sums to ``samples``.
    """

    samples: int = 0
    order_hist: dict = field(default_factory=dict)
    no_si: int = 0
    nonsimple: int = 0
    beyond_triple: int = 0
    repeated_edge: int = 0

    def order_distribution(self, k: int) -> dict:
        return dict(self.order_hist.get(k, {0: self.samples}))

    def merge(self, other: "ToyCensus") -> "ToyCensus":
        orders = set(self.order_hist) | set(other.order_hist)
        hist = {}
        for k in orders:
            a = self.order_distribution(k)
            b = other.order_distribution(k)
            hist[k] = {m: a.get(m, 0) + b.get(m, 0) for m in set(a) | set(b)}
        return ToyCensus(
            samples=self.samples + other.samples,
            order_hist=hist,
            no_si=self.no_si + other.no_si,
            nonsimple=self.nonsimple + other.nonsimple,
            beyond_triple=self.beyond_triple + other.beyond_triple,
            repeated_edge=self.repeated_edge + other.repeated_edge,
        )


def sample_closed_path(n: int, p: int, seed: int) -> ClosedPath:
    """One uniform draw from the n^p sequences; fixed by (n, p, seed)."""
    if n < 1 or p < 1:
        raise ConfigurationError("need n >= 1 and p >= 1")
    gen = np.random.Generator(np.random.Philox(key=seed))
    verts = gen.integers(1, n + 1, size=p, dtype=np.int64)
    return ClosedPath(tuple(int(v) for v in verts), n)


def si_census(path: ClosedPath):
    """(order -> vertex count, repeated-edge flag) for one path.

    Visits are counted over instants 0..p-1; the closing arrival is not a
    visit, but the closing edge does count for the edge flag.
    """
    visits = {}
    for v in path.vertices:
        visits[v] = visits.get(v, 0) + 1
    orders = {}
    for c in visits.values():
        if c >= 2:
            orders[c] = orders.get(c, 0) + 1
    repeated = any(c >= 2 for c in _edge_counts(path).values())
    return orders, repeated


def _edge_counts(path: ClosedPath) -> dict:
    counts = {}
    for e in path.steps():
        counts[e] = counts.get(e, 0) + 1
    return counts


def _row_runs(sorted2d: np.ndarray):
    """Run-start rows and run lengths for a row-sorted 2d array."""
    r, p = sorted2d.shape
    new = np.ones((r, p), dtype=bool)
    new[:, 1:] = sorted2d[:, 1:] != sorted2d[:, :-1]
    starts = np.flatnonzero(new.ravel())
    lengths = np.diff(np.append(starts, r * p))
    return starts // p, lengths


def _census_batch(rows: np.ndarray, n: int) -> ToyCensus:
    r, p = rows.shape
    srt = np.sort(rows, axis=1)
    run_rows, run_len = _row_runs(srt)

    out = ToyCensus(samples=r)
    for k in np.unique(run_len[run_len >= 2]):
        per_row = np.bincount(run_rows[run_len == k], minlength=r)
        ms, counts = np.unique(per_row, return_counts=True)
        out.order_hist[int(k)] = {int(m): int(c) for m, c in zip(ms, counts)}
    hit = np.bincount(run_rows[run_len >= 2], minlength=r)
    out.no_si = int(np.sum(hit == 0))
    out.nonsimple = int(np.sum(np.bincount(run_rows[run_len >= 3], minlength=r) > 0))
    out.beyond_triple = int(np.sum(np.bincount(run_rows[run_len >= 4], minlength=r) > 0))

    # nonoriented edge codes, closing step included
    nxt = np.empty_like(rows)
    nxt[:, :-1] = rows[:, 1:]
    nxt[:, -1] = rows[:, 0]
    lo = np.minimum(rows, nxt)
    hi = np.maximum(rows, nxt)
    codes = np.sort(lo * np.int64(n + 1) + hi, axis=1)
    rep = np.any(codes[:, 1:] == codes[:, :-1], axis=1)
    out.repeated_edge = int(np.sum(rep))
    return out


def collect_census(n: int, p: int, replicas: int, seed: int) -> ToyCensus:
    """Census over ``replicas`` uniform paths, batched and reproducible.

    Batch b draws from the Philox stream keyed by (seed, b), so the result
    depends only on the arguments.
    """
    if replicas < 1:
        raise ConfigurationError("need at least one replica")
    batch_rows = max(1, _BATCH_ELEMENTS // p)
    total = ToyCensus()
    done = 0
    b = 0
    while done < replicas:
        r = min(batch_rows, replicas - done)
        gen = np.random.Generator(np.random.Philox(key=replica_key(seed, b)))
        rows = gen.integers(1, n + 1, size=(r, p), dtype=np.int64)
        total = total.merge(_census_batch(rows, n))
        done += r
        b += 1
    return total


def exhaustive_census(n: int, p: int) -> ToyCensus:
    """Exact census over all n^p sequences (small cases only)."""
    if n**p > _EXHAUSTIVE_BUDGET:
        raise ResourceLimitError(f"{n}^{p} sequences exceed the exhaustive budget")
    seqs = np.indices((n,) * p).reshape(p, -1).T + 1
    return _census_batch(np.ascontiguousarray(seqs, dtype=np.int64), n)


def exact_no_si_probability(n: int, p: int) -> Fraction:
    """P(no self-intersection) = prod_{k<p} (1 - k/n), an exact rational."""
    out = Fraction(1)
    for k in range(p):
        out *= Fraction(n - k, n)
        if out == 0:
            break
    return max(out, Fraction(0))


def poisson_pmf(mean: float, kmax: int) -> np.ndarray:
    """P(X = 0..kmax) by the stable forward recursion."""
    if mean < 0 or kmax < 0:
        raise ConfigurationError("need mean >= 0 and kmax >= 0")
    out = np.empty(kmax + 1)
    out[0] = math.exp(-mean)
    for k in range(1, kmax + 1):
        out[k] = out[k - 1] * mean / k
    return out


def _tv_to_poisson(dist: dict, samples: int, mean: float) -> float:
    kmax = max(dist, default=0)
    pmf = poisson_pmf(mean, kmax)
    emp = np.zeros(kmax + 1)
    for m, c in dist.items():
        emp[m] = c / samples
    return 0.5 * (float(np.sum(np.abs(emp - pmf))) + (1.0 - float(np.sum(pmf))))


def _lattice_ks_normal(dist: dict, samples: int, mu: float, sigma: float) -> float:
    """KS distance of an integer sample against N(mu, sigma^2).

    The empirical CDF is compared at the half-integer cell boundaries, the
    only points where a lattice distribution can match a continuous one.
    """
    ks = 0.0
    acc = 0
    for m in sorted(dist):
        acc += dist[m]
        z = (m + 0.5 - mu) / sigma
        ref = 0.5 * (1.0 + math.erf(z / math.sqrt(2.0)))
        ks = max(ks, abs(acc / samples - ref))
    return ks


@dataclass(frozen=True)
class ToyReport:
    """One proposition check, JSON-ready via as_dict."""

    n: int
    p: int
    replicas: int
    statistic: str
    estimate: float
    reference: float
    distance: float
    stderr: float
    extra: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        out = {"n": self.n, "p": self.p, "replicas": self.replicas,
               "statistic": self.statistic, "estimate": self.estimate,
               "reference": self.reference, "distance": self.distance,
               "stderr": self.stderr}
        out.update(self.extra)
        return out


PROPOSITIONS = ("P1", "P2", "P3", "P4", "P5")


def _binomial_se(freq: float, replicas: int) -> float:
    return math.sqrt(max(freq * (1.0 - freq), 0.0) / replicas)


def proposition_check(n: int, p: int, replicas: int, which: str,
                      seed: int = 0) -> ToyReport:
    """Monte Carlo check of one limit proposition; see module docstring.

    P1: repeated-edge probability (limit 0 for p << n).
    P2: self-intersection probability vs the exact product formula.
    P3: simple-count total variation against Poisson(p^2/2n).
    P4: standardized simple count against N(0,1), lattice-corrected KS.
    P5: triple-count total variation against Poisson(p^3/6n^2).
    """
    if replicas < 1000:
        raise ConfigurationError("proposition checks need >= 1000 replicas")
    census = collect_census(n, p, replicas, seed)
    se_cell = math.sqrt(0.25 / replicas)
    if which == "P1":
        est = census.repeated_edge / replicas
        return ToyReport(n, p, replicas, "repeated_edge_probability",
                         est, 0.0, est, _binomial_se(est, replicas))
    if which == "P2":
        est = 1.0 - census.no_si / replicas
        ref = 1.0 - float(exact_no_si_probability(n, p))
        return ToyReport(n, p, replicas, "self_intersection_probability",
                         est, ref, abs(est - ref), _binomial_se(est, replicas))
    if which == "P3":
        mean = p * p / (2.0 * n)
        dist = census.order_distribution(2)
        tv = _tv_to_poisson(dist, replicas, mean)
        est = sum(m * c for m, c in dist.items()) / replicas
        return ToyReport(n, p, replicas, "simple_count_tv_poisson",
                         est, mean, tv, se_cell,
                         extra={"nonsimple_frequency": census.nonsimple / replicas})
    if which == "P4":
        mu = p * p / (2.0 * n)
        sigma = p / math.sqrt(2.0 * n)
        dist = census.order_distribution(2)
        ks = _lattice_ks_normal(dist, replicas, mu, sigma)
        est = (sum(m * c for m, c in dist.items()) / replicas - mu) / sigma
        return ToyReport(n, p, replicas, "standardized_simple_ks_normal",
                         est, 0.0, ks, se_cell,
                         extra={"nonsimple_frequency": census.nonsimple / replicas})
    if which == "P5":
        mean = p**3 / (6.0 * n * n)
        dist = census.order_distribution(3)
        tv = _tv_to_poisson(dist, replicas, mean)
        est = sum(m * c for m, c in dist.items()) / replicas
        return ToyReport(n, p, replicas, "triple_count_tv_poisson",
                         est, mean, tv, se_cell,
                         extra={"beyond_triple_frequency": census.beyond_triple / replicas})
    raise ConfigurationError(f"unknown proposition {which!r}; use P1..P5")
