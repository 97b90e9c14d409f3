"""Estimators for the edge statistics: CDFs, counts, truncated sums.

The linear statistic of a rescaled spectrum is sum exp(t theta_j) truncated
to theta_j < n^(1/6), equivalently to eigenvalues below 1 + 1/(2 sqrt n);
its distinct-index products come from the power-sum expansion rather than
nested loops.  trace_vs_linear reports how well the truncated sums reproduce
the half-sum and half-difference of two adjacent high trace powers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .spectra import EdgeSample, Spectrum, rescale_edges, trace_power


@dataclass(frozen=True)
class EmpiricalCDF:
    """Right-continuous step CDF of a sample; values kept sorted."""

    values: np.ndarray
    count: int

    @classmethod
    def from_samples(cls, samples) -> "EmpiricalCDF":
        v = np.sort(np.asarray(samples, dtype=float).ravel())
        if v.size == 0:
            raise DomainError("an empirical CDF needs at least one sample")
        return cls(values=v, count=v.size)

    def merge(self, other: "EmpiricalCDF") -> "EmpiricalCDF":
        v = np.sort(np.concatenate([self.values, other.values]))
        return EmpiricalCDF(values=v, count=v.size)

    def evaluate(self, x):
        x = np.asarray(x, dtype=float)
        out = np.searchsorted(self.values, x, side="right") / self.count
        return float(out) if out.ndim == 0 else out


def ks_distance(ecdf: EmpiricalCDF, reference_cdf) -> float:
    """sup |F_emp - F_ref| probed at sample points and their left limits."""
    ref = np.asarray(reference_cdf(ecdf.values), dtype=float)
    grid = np.arange(1, ecdf.count + 1) / ecdf.count
    d_plus = float(np.max(grid - ref))
    d_minus = float(np.max(ref - (grid - 1.0 / ecdf.count)))
    return max(d_plus, d_minus, 0.0)


def ks_two_sample(a: EmpiricalCDF, b: EmpiricalCDF) -> float:
    pts = np.concatenate([a.values, b.values])
    return float(np.max(np.abs(a.evaluate(pts) - b.evaluate(pts))))


@dataclass
class CountCollector:
    """Per-replica interval occupation counts nu_I; shards merge additively."""

    intervals: tuple
    counts: list

    @classmethod
    def for_intervals(cls, intervals) -> "CountCollector":
        ivs = tuple((float(lo), float(hi)) for lo, hi in intervals)
        for lo, hi in ivs:
            if not lo < hi:
                raise DomainError("intervals need lo < hi")
        return cls(intervals=ivs, counts=[])

    def record(self, values):
        v = np.asarray(values, dtype=float)
        row = tuple(int(np.sum((v > lo) & (v <= hi))) for lo, hi in self.intervals)
        self.counts.append(row)

    def merge(self, other: "CountCollector") -> "CountCollector":
        if self.intervals != other.intervals:
            raise DomainError("collectors carry different interval lists")
        return CountCollector(self.intervals, self.counts + other.counts)

    def column(self, i: int) -> np.ndarray:
        return np.array([row[i] for row in self.counts], dtype=float)


def factorial_moment(counts, k: int) -> float:
    """Replica mean of nu (nu-1) ... (nu-k+1)."""
    if k < 1:
        raise DomainError("factorial moment order must be >= 1")
    nu = np.asarray(counts, dtype=float)
    if nu.size == 0:
        raise DomainError("factorial moment needs at least one count")
    prod = np.ones_like(nu)
    for j in range(k):
        prod = prod * (nu - j)
    return float(np.mean(prod))


def _side_values(edge: EdgeSample, side: str) -> np.ndarray:
    if side == "upper":
        return edge.theta
    if side == "lower":
        return edge.tau
    raise DomainError("side must be 'upper' or 'lower'")


def linear_statistic(edge: EdgeSample, t: float, side: str = "upper") -> float:
    """sum exp(t theta_j) over theta_j < n^(1/6); strict cutoff."""
    if t <= 0:
        raise DomainError("the statistic needs t > 0")
    v = _side_values(edge, side)
    kept = v[v < edge.n ** (1.0 / 6.0)]
    return float(np.sum(np.exp(t * kept)))


def _partitions(items):
    # all set partitions of a small tuple
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]
        yield [[first]] + part


def product_statistic(edge: EdgeSample, ts, side: str = "upper") -> float:
    """Distinct-index product sum S_{n,k}(t_1..t_k), k <= 4.

    Expands over set partitions: a block B contributes the plain statistic
    at sum of its t's, weighted by (-1)^(|B|-1) (|B|-1)!.
    """
    ts = tuple(float(t) for t in ts)
    if not 1 <= len(ts) <= 4:
        raise DomainError("product statistics support 1 <= k <= 4")
    total = 0.0
    for part in _partitions(ts):
        term = 1.0
        for block in part:
            term *= math.factorial(len(block) - 1) * (-1) ** (len(block) - 1)
            term *= linear_statistic(edge, sum(block), side)
        total += term
    return total


@dataclass(frozen=True)
class TraceComparison:
    """Trace powers vs truncated linear statistics at one t."""

    p_even: int
    trace_even: float
    trace_odd: float
    upper: float
    lower: float
    residual_upper: float
    residual_lower: float
    band_even: float
    band_odd: float
    band_residual: float
    overflow: bool


def trace_vs_linear(spectrum: Spectrum, t: float) -> TraceComparison:
    """Compare sum exp(t theta) with adjacent high trace powers.

    Uses p = 2 floor(t n^(2/3)): the truncated upper statistic should track
    (Trace A^p + Trace A^(p+1))/2, the lower one the half-difference, and
    the band-restricted traces (|lambda| < 1 + 1/(2 sqrt n)) reproduce the
    upper statistic without the tail contribution.
    """
    if t <= 0:
        raise DomainError("the comparison needs t > 0")
    n = spectrum.n
    if n < 8:
        raise DomainError("trace comparison needs n >= 8")
    p = 2 * int(math.floor(t * n ** (2.0 / 3.0)))
    te, fe = trace_power(spectrum, p, with_flag=True)
    to, fo = trace_power(spectrum, p + 1, with_flag=True)
    edge = rescale_edges(spectrum, n)
    upper = linear_statistic(edge, t, "upper")
    lower = linear_statistic(edge, t, "lower")

    lam = spectrum.eigenvalues
    band = lam[np.abs(lam) < 1.0 + 0.5 / math.sqrt(n)]
    band_even = float(np.sum(band ** p))
    band_odd = float(np.sum(band ** (p + 1)))
    return TraceComparison(
        p_even=p,
        trace_even=te,
        trace_odd=to,
        upper=upper,
        lower=lower,
        residual_upper=upper - 0.5 * (te + to),
        residual_lower=lower - 0.5 * (te - to),
        band_even=band_even,
        band_odd=band_odd,
        band_residual=upper - 0.5 * (band_even + band_odd),
        overflow=bool(fe or fo),
    )
